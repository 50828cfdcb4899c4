#pragma once

#include "qsim/matrix.hpp"

#include <cstdint>

namespace qsim {

inline constexpr std::size_t kMaxPureQubits = 16;
inline constexpr std::size_t kMaxDensityQubits = 8;

/// Embed a 2^k-dimensional operator acting on the listed qubits (1-based,
/// first listed qubit = most significant bit of the operator index) into
/// the full 2^n space.
ComplexMatrix embed(const ComplexMatrix& op, std::size_t n, const std::vector<int>& qubits);

class DensityMatrix;

class PureState {
public:
    PureState(std::size_t qubits, std::vector<cplx> amplitudes);

    /// Normalizes the amplitude vector before constructing.
    static PureState normalized(std::size_t qubits, std::vector<cplx> amplitudes);
    static PureState basis(std::size_t qubits, std::size_t index);
    static PureState plus_states(std::size_t qubits);

    std::size_t qubits() const { return n_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<cplx>& amplitudes() const { return amps_; }
    cplx amp(std::size_t i) const { return amps_[i]; }

    PureState tensor(const PureState& other) const;
    PureState apply(const ComplexMatrix& unitary) const;
    PureState apply_on(const ComplexMatrix& op, const std::vector<int>& qubits) const;

    /// Projects the given qubit (1-based) onto the basis vector
    /// {b0, b1} indexed by `outcome`, removes the qubit, and renormalizes.
    /// Returns the branch probability; throws if it is below 1e-12.
    PureState collapse_qubit(int qubit, const cplx b0[2], const cplx b1[2], int outcome,
                             double* probability = nullptr) const;
    double branch_probability(int qubit, const cplx b0[2], const cplx b1[2], int outcome) const;

    DensityMatrix to_density() const;

private:
    std::size_t n_;
    std::vector<cplx> amps_;
};

cplx inner(const PureState& a, const PureState& b);
double fidelity(const PureState& a, const PureState& b);

class DensityMatrix {
public:
    DensityMatrix(std::size_t qubits, ComplexMatrix matrix);

    /// Skips the invariant checks; for internal steps whose output is
    /// validated elsewhere.
    static DensityMatrix unchecked(std::size_t qubits, ComplexMatrix matrix);
    static DensityMatrix maximally_mixed(std::size_t qubits);

    std::size_t qubits() const { return n_; }
    std::size_t dim() const { return mat_.rows(); }
    const ComplexMatrix& matrix() const { return mat_; }

    DensityMatrix tensor(const DensityMatrix& other) const;
    DensityMatrix conjugate(const ComplexMatrix& unitary) const;
    DensityMatrix conjugate_on(const ComplexMatrix& op, const std::vector<int>& qubits) const;

    void validate() const;

private:
    DensityMatrix() : n_(0) {}
    std::size_t n_;
    ComplexMatrix mat_;
};

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);
double fidelity(const PureState& psi, const DensityMatrix& rho);
double expectation(const ComplexMatrix& op, const PureState& psi);
double expectation(const ComplexMatrix& op, const DensityMatrix& rho);

}  // namespace qsim
