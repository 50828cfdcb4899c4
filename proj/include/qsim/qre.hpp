#pragma once

#include "qsim/verify.hpp"

#include <optional>
#include <string>

namespace qsim::qre {

/// Randomized-encoding scheme: encode/decode/simulator channels around a
/// target channel, evaluated on a finite state family.
struct QreScheme {
    std::string name;
    Channel encode = Channel::identity(1);     // F-hat (averaged over classical randomness)
    Channel decode = Channel::identity(1);     // Dec
    Channel simulator = Channel::identity(1);  // Sim
    Channel target = Channel::identity(1);     // F
    std::vector<DensityMatrix> family;
    std::size_t junk_qubits = 0;               // trailing qubits of F's output
    std::optional<DensityMatrix> junk_state;   // eta, required when junk_qubits > 0
    /// Set when the family enumerates the verification challenges
    /// sigma_{h,m} in index order h*2^n + m.
    std::optional<std::size_t> bb84_n;

    void validate() const;
    const DensityMatrix& sigma(int h, const std::vector<int>& m) const;
};

struct SchemeParams {
    double delta_hat = 0.0;  // max_i (1/2)||Dec(F^(rho)) - F(rho)||_1
    double eps_hat = 0.0;    // max_i (1/2)||F^(rho) - Sim(F(rho))||_1
    bool classical = false;  // every F^(rho) diagonal in the computational basis
};

SchemeParams measure_params(const QreScheme& scheme);

// Built-in scheme zoo.
QreScheme identity_scheme(std::size_t n);
QreScheme noisy_identity_scheme(std::size_t n, double p);
QreScheme measure_forward_scheme();
QreScheme label_scheme();
QreScheme identity_on_classical_scheme();
QreScheme scheme_by_name(const std::string& name, std::size_t n = 2);

std::string scheme_to_json(const QreScheme& scheme);
QreScheme scheme_from_json(const std::string& text);

enum class Mode { Exact, MonteCarlo };

/// Acceptance probability of the encoded two-round protocol: the verifier
/// sends F-hat(sigma_{h,m}); the honest prover decodes, traces out the junk
/// subsystem and teleport-measures; malicious strategies act on the encoded
/// state directly.
verify::AcceptanceResult protocol_two_run(const QreScheme& scheme, const HamiltonianSpec& spec,
                                          const verify::ProverStrategy& strategy, Mode mode,
                                          std::uint64_t trials = 0, std::uint64_t seed = 0);

/// Acceptance probability in the plain (unencoded) protocol of the
/// three-step simulated prover: add eta, apply Sim, then measure the POVM.
verify::AcceptanceResult simulated_malicious_acceptance(const QreScheme& scheme,
                                                        const HamiltonianSpec& spec,
                                                        const Povm& attack);

struct GapResult {
    double c_prime = 0.0;  // (1 - alpha) - 2*delta_hat
    double s_prime = 0.0;  // (1 - beta) + 2*eps_hat
    bool positive = false;
};

GapResult completeness_soundness_gap(const QreScheme& scheme, double alpha, double beta);

}  // namespace qsim::qre
