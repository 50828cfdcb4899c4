#include "qsim/blind.hpp"

#include "qsim/gates.hpp"

#include <cmath>
#include <stdexcept>

namespace qsim::blind {

namespace {

constexpr std::size_t kMaxWire = 12;

PureState plus_theta(double theta) {
    const double s = 1.0 / std::sqrt(2.0);
    return PureState(1, {s, s * std::exp(cplx(0.0, theta))});
}

PureState cz_chain(PureState state) {
    for (std::size_t i = 1; i < state.qubits(); ++i)
        state = state.apply_on(gates::cz(), {static_cast<int>(i), static_cast<int>(i + 1)});
    return state;
}

PureState intended_state(const std::vector<AngleOctant>& angles, double xi) {
    const ComplexMatrix u = matmul(compiled_unitary(angles), gates::exp_iz_half(xi));
    const double s = 1.0 / std::sqrt(2.0);
    return PureState(1, {s * (u(0, 0) + u(0, 1)), s * (u(1, 0) + u(1, 1))});
}

PureState unlock_pure(const PureState& state, const OtpKey& key) {
    ComplexMatrix op = gates::pauli_xz(key.x[0], key.z[0]);
    for (std::size_t j = 1; j < key.x.size(); ++j)
        op = kron(op, gates::pauli_xz(key.x[j], key.z[j]));
    return state.apply(op.dagger());
}

ComplexMatrix full_pad(const OtpKey& key) {
    if (key.x.size() != key.z.size() || key.x.empty())
        throw std::invalid_argument("qotp: key length mismatch");
    ComplexMatrix op = gates::pauli_xz(key.x[0], key.z[0]);
    for (std::size_t j = 1; j < key.x.size(); ++j)
        op = kron(op, gates::pauli_xz(key.x[j], key.z[j]));
    return op;
}

}  // namespace

double AngleOctant::radians() const { return static_cast<double>(k) * M_PI / 8.0; }

PureState linear_graph_state(std::size_t n) {
    if (n == 0 || n > kMaxWire) throw std::invalid_argument("linear_graph_state: bad size");
    return cz_chain(PureState::plus_states(n));
}

PureState rotated_graph(const std::vector<double>& thetas) {
    if (thetas.empty() || thetas.size() > kMaxWire)
        throw std::invalid_argument("rotated_graph: bad size");
    PureState state = plus_theta(thetas[0]);
    for (std::size_t j = 1; j < thetas.size(); ++j) state = state.tensor(plus_theta(thetas[j]));
    return cz_chain(state);
}

std::pair<int, PureState> mbqc_step(const PureState& state, double angle, Rng& rng) {
    const double s = 1.0 / std::sqrt(2.0);
    const cplx phase = std::exp(cplx(0.0, angle));
    const cplx b0[2] = {s, s * phase};
    const cplx b1[2] = {s, -s * phase};
    const double p0 = state.branch_probability(1, b0, b1, 0);
    const int outcome = rng.uniform() < p0 ? 0 : 1;
    return {outcome, state.collapse_qubit(1, b0, b1, outcome)};
}

PureState mbqc_step_forced(const PureState& state, double angle, int outcome,
                           double* probability) {
    const double s = 1.0 / std::sqrt(2.0);
    const cplx phase = std::exp(cplx(0.0, angle));
    const cplx b0[2] = {s, s * phase};
    const cplx b1[2] = {s, -s * phase};
    return state.collapse_qubit(1, b0, b1, outcome, probability);
}

ComplexMatrix compiled_unitary(const std::vector<AngleOctant>& angles) {
    ComplexMatrix u(2, 2);
    u(0, 0) = 1.0;
    u(1, 1) = 1.0;
    for (const AngleOctant& phi : angles)
        u = matmul(matmul(gates::hadamard(), gates::rz_diag(phi.radians())), u);
    return u;
}

BlindRunResult bfk_run(const std::vector<AngleOctant>& target_angles, std::size_t n, Rng& rng,
                       double xi) {
    if (n < 2 || n > 8 || target_angles.size() + 1 != n)
        throw std::invalid_argument("bfk_run: need n = angles + 1, n in [2, 8]");
    // Client preparation: random wire rotations, |+> or |-> on the output.
    std::vector<int> theta_k(n);
    for (std::size_t j = 0; j + 1 < n; ++j) theta_k[j] = static_cast<int>(rng.integer(8));
    const int t = rng.bit();
    theta_k[n - 1] = 8 * t;
    std::vector<double> thetas(n);
    for (std::size_t j = 0; j < n; ++j) thetas[j] = AngleOctant(theta_k[j]).radians();

    PureState state = rotated_graph(thetas);
    BlindRunResult res;
    res.backend = "bfk";
    res.xi = xi;

    int a = 0, b = 0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const int phi_adapted = (a ? -target_angles[j].k : target_angles[j].k) + 8 * b;
        const int r = rng.bit();
        const AngleOctant delta(phi_adapted + theta_k[j] + 8 * r);
        const double measured = delta.radians() + (j == 0 ? xi : 0.0);
        auto [s, post] = mbqc_step(state, measured, rng);
        state = std::move(post);
        res.transcript.push_back({thetas[j], delta.radians(), r, s});
        const int logical = s ^ r;
        b = a;
        a = logical;
    }

    res.key.x = {a};
    res.key.z = {b ^ t};
    res.server_final = state;
    res.unlocked = unlock_pure(state, res.key);
    res.intended = intended_state(target_angles, xi);
    res.fidelity_to_target = fidelity(res.intended, res.unlocked);
    return res;
}

BlindRunResult mf_run(const std::vector<AngleOctant>& target_angles, std::size_t n, Rng& rng,
                      double xi) {
    if (n < 2 || n > 8 || target_angles.size() + 1 != n)
        throw std::invalid_argument("mf_run: need n = angles + 1, n in [2, 8]");
    PureState state = linear_graph_state(n);
    if (xi != 0.0) state = state.apply_on(gates::exp_iz_half(xi), {1});

    BlindRunResult res;
    res.backend = "mf";
    res.xi = xi;

    int a = 0, b = 0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const int phi_adapted = (a ? -target_angles[j].k : target_angles[j].k) + 8 * b;
        const AngleOctant angle(phi_adapted);
        auto [s, post] = mbqc_step(state, angle.radians(), rng);
        state = std::move(post);
        res.transcript.push_back({0.0, angle.radians(), 0, s});
        b = a;
        a = s;
    }

    res.key.x = {a};
    res.key.z = {b};
    res.server_final = state;
    res.unlocked = unlock_pure(state, res.key);
    res.intended = intended_state(target_angles, xi);
    res.fidelity_to_target = fidelity(res.intended, res.unlocked);
    return res;
}

DensityMatrix qotp(const DensityMatrix& rho, const OtpKey& key) {
    return rho.conjugate(full_pad(key));
}

DensityMatrix qotp_unlock(const DensityMatrix& rho, const OtpKey& key) {
    return rho.conjugate(full_pad(key).dagger());
}

double blindness_gap(const std::string& backend, double xi) {
    const std::vector<AngleOctant> identity_program{AngleOctant(0), AngleOctant(0)};
    const std::vector<AngleOctant> x_program{AngleOctant(0), AngleOctant(8)};
    auto run = [&](const std::vector<AngleOctant>& prog) {
        Rng rng(0x6c696e64);
        if (backend == "bfk") return bfk_run(prog, 3, rng, xi).unlocked;
        if (backend == "mf") return mf_run(prog, 3, rng, xi).unlocked;
        throw std::invalid_argument("blindness_gap: unknown backend " + backend);
    };
    const PureState out_i = run(identity_program);
    const PureState out_x = run(x_program);
    return 0.5 * trace_distance(out_i.to_density(), out_x.to_density());
}

}  // namespace qsim::blind
