#pragma once

#include "qsim/rng.hpp"
#include "qsim/state.hpp"

#include <string>

namespace qsim::blind {

/// Angle in units of pi/8, arithmetic mod 16 (i.e. mod 2*pi).
struct AngleOctant {
    int k = 0;

    explicit AngleOctant(int v = 0) : k(((v % 16) + 16) % 16) {}
    double radians() const;
    AngleOctant operator+(AngleOctant o) const { return AngleOctant(k + o.k); }
};

struct OtpKey {
    std::vector<int> x;
    std::vector<int> z;
};

struct StepRecord {
    double theta = 0.0;  // client's random rotation for this wire qubit
    double delta = 0.0;  // angle announced to / used by the measuring party
    int r = 0;           // outcome-padding bit (BFK only)
    int s = 0;           // raw measurement outcome
};

struct BlindRunResult {
    std::string backend;
    double xi = 0.0;
    OtpKey key;
    std::vector<StepRecord> transcript;
    PureState server_final = PureState::plus_states(1);  // padded output qubit
    PureState unlocked = PureState::plus_states(1);      // after key release
    PureState intended = PureState::plus_states(1);      // U e^{i xi Z / 2} |+>
    double fidelity_to_target = 0.0;  // |<intended|unlocked>|^2
};

/// (prod CZ_{i,i+1}) |+>^n.
PureState linear_graph_state(std::size_t n);

/// (prod CZ_{i,i+1}) [tensor of |+_theta_j>]; equals the rotation-after-
/// entanglement order by the commutation identity.
PureState rotated_graph(const std::vector<double>& thetas);

/// Measures the first wire qubit in |±_angle> and removes it; the logical
/// effect of outcome s is X^s H diag(1, e^{-i*angle}).
std::pair<int, PureState> mbqc_step(const PureState& state, double angle, Rng& rng);
PureState mbqc_step_forced(const PureState& state, double angle, int outcome,
                           double* probability = nullptr);

/// The single-wire unitary compiled from the angle program:
/// U = [H diag(1, e^{-i*phi_{n-1}})] ... [H diag(1, e^{-i*phi_1})].
ComplexMatrix compiled_unitary(const std::vector<AngleOctant>& angles);

/// Client-prepares protocol on an n-qubit wire (n = angles + 1); xi != 0
/// models a server that measures the first qubit at delta_1 + xi.
BlindRunResult bfk_run(const std::vector<AngleOctant>& target_angles, std::size_t n, Rng& rng,
                       double xi);

/// Client-measures protocol; xi != 0 models a server that applies
/// e^{i xi Z / 2} to the first graph qubit before sending.
BlindRunResult mf_run(const std::vector<AngleOctant>& target_angles, std::size_t n, Rng& rng,
                      double xi);

DensityMatrix qotp(const DensityMatrix& rho, const OtpKey& key);
DensityMatrix qotp_unlock(const DensityMatrix& rho, const OtpKey& key);

/// Runs the attack for U = I and U = X (identical honest inputs |+>) and
/// returns half the trace distance of the two post-unlock outputs: a lower
/// bound on the blindness parameter of any simulator.
double blindness_gap(const std::string& backend, double xi);

}  // namespace qsim::blind
