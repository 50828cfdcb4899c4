#pragma once

#include "qsim/matrix.hpp"

namespace qsim {

struct EigResult {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // columns are the matching eigenvectors
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
/// Stops when the off-diagonal Frobenius norm drops below 1e-10 or after
/// 100 sweeps. Dimension is capped at 1024.
EigResult hermitian_eig(const ComplexMatrix& m);

/// Hermitian PSD square root via diagonalization; negative eigenvalues
/// within tolerance are clamped to zero.
ComplexMatrix hermitian_sqrt(const ComplexMatrix& m);

/// Fast PSD test: true iff m + tol*I admits a (semidefinite) Cholesky
/// factorization, i.e. the minimum eigenvalue is >= -tol up to rounding.
bool is_psd_within(const ComplexMatrix& m, double tol);

}  // namespace qsim
