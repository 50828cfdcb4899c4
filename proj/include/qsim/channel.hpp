#pragma once

#include "qsim/state.hpp"

namespace qsim {

/// Completely positive trace-preserving map given by a finite Kraus list.
/// Kraus operators may be rectangular (2^out x 2^in). Classical randomness
/// is represented by enlarging the Kraus list (mixture of channels).
class Channel {
public:
    Channel(std::size_t in_qubits, std::size_t out_qubits, std::vector<ComplexMatrix> kraus);

    static Channel identity(std::size_t qubits);
    static Channel unitary(std::size_t qubits, const ComplexMatrix& u);
    /// Uniform-Pauli depolarizing channel of strength p on each qubit jointly:
    /// rho -> (1-p) rho + p I/2^n.
    static Channel depolarizing(std::size_t qubits, double p);
    /// Computational-basis dephasing: kills all off-diagonal entries.
    static Channel dephasing(std::size_t qubits);
    /// Traces out the complement of `keep` (1-based indices).
    static Channel partial_trace_channel(std::size_t qubits, const std::vector<int>& keep);
    /// rho -> rho (x) eta.
    static Channel append_state(std::size_t qubits, const DensityMatrix& eta);
    /// Convex mixture of channels with the given weights (must sum to 1).
    static Channel mixture(const std::vector<std::pair<double, Channel>>& parts);

    std::size_t in_qubits() const { return in_; }
    std::size_t out_qubits() const { return out_; }
    const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

    DensityMatrix apply(const DensityMatrix& rho) const;

    /// this ∘ other (other acts first).
    Channel compose(const Channel& other) const;
    Channel tensor(const Channel& other) const;
    Channel tensor_power(std::size_t k) const;

    double completeness_defect() const;  // ||sum K†K - I||_max

private:
    Channel() : in_(0), out_(0) {}
    std::size_t in_, out_;
    std::vector<ComplexMatrix> kraus_;
};

struct PovmEffect {
    std::size_t label;
    ComplexMatrix op;
};

class Rng;

/// Positive operator-valued measure with integer outcome labels.
class Povm {
public:
    explicit Povm(std::vector<PovmEffect> effects);

    static Povm computational(std::size_t qubits);

    const std::vector<PovmEffect>& effects() const { return effects_; }
    std::size_t dim() const;

    /// Exact Born-rule outcome distribution, indexed like `effects()`.
    std::vector<double> distribution(const DensityMatrix& rho) const;

    struct Outcome {
        std::size_t label;
        double probability;
        DensityMatrix post;
    };

    /// Samples an outcome and computes the post-measurement state
    /// sqrt(E) rho sqrt(E) / p. Outcomes with p < 1e-12 are never sampled.
    Outcome measure(const DensityMatrix& rho, Rng& rng) const;

private:
    std::vector<PovmEffect> effects_;
};

}  // namespace qsim
