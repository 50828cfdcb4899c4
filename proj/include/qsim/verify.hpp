#pragma once

#include "qsim/channel.hpp"
#include "qsim/hamiltonian.hpp"
#include "qsim/rng.hpp"

#include <functional>
#include <optional>
#include <string>

namespace qsim::verify {

/// Challenge state: tensor of H^h|m_j>.
PureState bb84_state(int h, const std::vector<int>& m);

struct CenterSample {
    int h;
    std::vector<int> m;
    PureState state;
};

CenterSample sample_center(std::size_t n, Rng& rng);

struct ProverReport {
    std::vector<int> x;
    std::vector<int> z;
};

/// Outcome label packing: label = X * 2^N + Z with X, Z the big-endian
/// integer encodings of the x and z bit vectors.
std::size_t pack_report(const ProverReport& r);
ProverReport unpack_report(std::size_t label, std::size_t n);

struct ProverStrategy {
    enum class Kind {
        HonestTeleport,
        FixedReport,
        UniformRandomReport,
        WrongBasisMeasure,
        CustomPovm,
    };

    Kind kind;
    std::optional<PureState> resource;  // HonestTeleport
    ProverReport fixed;                 // FixedReport
    std::optional<Povm> povm;           // CustomPovm, labels over {0..4^N-1}

    static ProverStrategy honest(PureState e0);
    static ProverStrategy fixed_report(ProverReport r);
    static ProverStrategy uniform_random();
    static ProverStrategy wrong_basis();
    static ProverStrategy custom(Povm povm);
    static ProverStrategy by_name(const std::string& name, const HamiltonianSpec& spec);

    std::string name() const;
};

struct AcceptanceResult {
    double probability = 0.0;
    std::string method;  // "exact" or "monte-carlo"
    std::uint64_t trials = 0;
    double std_error = 0.0;
};

/// Exact Born-rule distribution over packed (x,z) labels when the honest
/// prover Bell-measures each received qubit against qubit j of e0.
std::vector<double> honest_outcome_distribution(const DensityMatrix& received,
                                                const PureState& e0);
std::vector<double> honest_outcome_distribution(const PureState& received, const PureState& e0);

ProverReport honest_prover_respond(const DensityMatrix& received, const PureState& e0, Rng& rng);
ProverReport honest_prover_respond(const PureState& received, const PureState& e0, Rng& rng);

/// Step-3 acceptance rule: m'_k = m_k xor (h z_k + (1-h) x_k), accept iff
/// (-1)^{m'_i} (-1)^{m'_j} = -s_ij.
bool verifier_decide(int h, const std::vector<int>& m, const ProverReport& report,
                     const HamiltonianTerm& term);

/// Probability the verifier accepts given a report, marginalized
/// analytically over the term sampling.
double verifier_accept_probability(const HamiltonianSpec& spec, int h, const std::vector<int>& m,
                                   const ProverReport& report);

/// Prover outcome distribution over packed labels for a given challenge.
std::vector<double> prover_distribution(const ProverStrategy& strategy,
                                        const DensityMatrix& received);

using ChallengeDistribution =
    std::function<std::vector<double>(int h, const std::vector<int>& m)>;

/// Exact acceptance probability for an arbitrary per-challenge prover
/// distribution; the enumeration backbone shared with the encoded protocol.
AcceptanceResult acceptance_exact_general(const HamiltonianSpec& spec,
                                          const ChallengeDistribution& dist);

AcceptanceResult acceptance_exact(const HamiltonianSpec& spec, const ProverStrategy& strategy);
AcceptanceResult acceptance_mc(const HamiltonianSpec& spec, const ProverStrategy& strategy,
                               std::uint64_t trials, std::uint64_t seed);

}  // namespace qsim::verify
