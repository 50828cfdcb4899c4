#pragma once

#include "qsim/state.hpp"

#include <string>

namespace qsim {

/// 2-local XX/ZZ Hamiltonian:
///   sum over terms of (p/2)[ (I + s X_i X_j)/2 + (I + s Z_i Z_j)/2 ].
/// Term weights are positive and sum to 1, so the spectrum lies in [0,1].
struct HamiltonianTerm {
    int i = 0;
    int j = 0;
    double p = 0.0;
    int s = 0;  // +1 or -1
};

struct HamiltonianSpec {
    std::size_t n = 0;
    std::vector<HamiltonianTerm> terms;

    void validate() const;

    std::string to_json() const;
    static HamiltonianSpec from_json(const std::string& text);
    /// SHA-free stable content hash used in reports.
    std::uint64_t content_hash() const;
};

struct GroundSolution {
    double energy = 0.0;
    PureState state;
    double residual = 0.0;
};

ComplexMatrix build(const HamiltonianSpec& spec);
GroundSolution ground(const HamiltonianSpec& spec);
double energy(const HamiltonianSpec& spec, const PureState& psi);

/// Named instance with decision thresholds computed from exact
/// diagonalization (the thresholds are artifact metadata, not assumptions).
struct Instance {
    std::string name;
    HamiltonianSpec spec;
    double alpha = 0.0;  // yes-instances have ground energy < alpha
    double beta = 0.0;   // no-instances have ground energy > beta
};

const std::vector<Instance>& instance_library();
const Instance& find_instance(const std::string& name);

}  // namespace qsim
