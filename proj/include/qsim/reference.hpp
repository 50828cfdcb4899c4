#pragma once

#include "qsim/state.hpp"

namespace qsim::ref {

// Serial reference kernels. These are deliberately written as plain
// index-summation loops, independent of the parallel implementations in
// the main library, and are used by the test suites as oracles and by the
// benchmark target as the baseline.

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Element-wise partial trace: out[r,c] = sum over traced-bit assignments.
ComplexMatrix partial_trace(const ComplexMatrix& rho, std::size_t n,
                            const std::vector<int>& keep);

/// Sum_k K rho K^dagger via triple loops.
ComplexMatrix apply_channel(const std::vector<ComplexMatrix>& kraus, const ComplexMatrix& rho);

}  // namespace qsim::ref
