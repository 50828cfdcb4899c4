#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qsim/blind.hpp"
#include "qsim/gates.hpp"
#include "qsim/stats.hpp"

using namespace qsim;
using namespace qsim::blind;

namespace {

PureState random_state(std::size_t qubits, Rng& rng) {
    std::vector<cplx> amps(std::size_t{1} << qubits);
    for (auto& a : amps) a = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
    return PureState::normalized(qubits, std::move(amps));
}

}  // namespace

TEST_CASE("linear graph states") {
    CHECK(fidelity(linear_graph_state(1), PureState::plus_states(1)) > 1.0 - 1e-12);
    const PureState g2 = linear_graph_state(2);
    const PureState want(2, {0.5, 0.5, 0.5, -0.5});
    CHECK(fidelity(g2, want) > 1.0 - 1e-12);

    // n=4 stabilizers Z_{j-1} X_j Z_{j+1}
    const PureState g4 = linear_graph_state(4);
    for (int j = 1; j <= 4; ++j) {
        ComplexMatrix op = embed(gates::pauli_x(), 4, {j});
        if (j > 1) op = matmul(op, embed(gates::pauli_z(), 4, {j - 1}));
        if (j < 4) op = matmul(op, embed(gates::pauli_z(), 4, {j + 1}));
        CHECK(expectation(op, g4) == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK_THROWS(linear_graph_state(13));
}

TEST_CASE("rotated graph commutation identity") {
    CHECK(fidelity(rotated_graph({0.0, 0.0, 0.0}), linear_graph_state(3)) > 1.0 - 1e-12);
    const PureState plus_i(1, {1.0 / std::sqrt(2.0), cplx(0.0, 1.0) / std::sqrt(2.0)});
    CHECK(fidelity(rotated_graph({M_PI / 2.0}), plus_i) > 1.0 - 1e-12);

    Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> thetas;
        for (int j = 0; j < 3; ++j)
            thetas.push_back(AngleOctant(static_cast<int>(rng.integer(16))).radians());
        PureState other = linear_graph_state(3);
        for (int j = 0; j < 3; ++j)
            other = other.apply_on(gates::exp_iz_half(-thetas[j]), {j + 1});
        CHECK(fidelity(rotated_graph(thetas), other) > 1.0 - 1e-9);
    }
}

TEST_CASE("mbqc step implements X^s H diag(1, e^{-i theta})") {
    Rng rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        const PureState psi = random_state(1, rng);
        const double theta = AngleOctant(static_cast<int>(rng.integer(16))).radians();
        const PureState two = psi.tensor(PureState::plus_states(1)).apply_on(gates::cz(), {1, 2});
        for (int s = 0; s < 2; ++s) {
            const PureState post = mbqc_step_forced(two, theta, s);
            ComplexMatrix gate = matmul(gates::hadamard(), gates::rz_diag(theta));
            if (s == 1) gate = matmul(gates::pauli_x(), gate);
            CHECK(fidelity(psi.apply(gate), post) > 1.0 - 1e-9);
        }
    }
    // theta = 0 on a logical |0> gives a fair coin
    const PureState wire = PureState::basis(1, 0).tensor(PureState::plus_states(1))
                               .apply_on(gates::cz(), {1, 2});
    double p0 = 0.0;
    mbqc_step_forced(wire, 0.0, 0, &p0);
    CHECK(p0 == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("angle substitution identity on the rotated graph") {
    Rng rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng.integer(3);  // n in {2,3,4}
        const int phi1 = static_cast<int>(rng.integer(16));
        const int theta1 = static_cast<int>(rng.integer(8));
        const int r1 = rng.bit();
        std::vector<double> thetas(n, 0.0);
        thetas[0] = AngleOctant(theta1).radians();
        for (std::size_t j = 1; j < n; ++j)
            thetas[j] = AngleOctant(static_cast<int>(rng.integer(8))).radians();

        const double delta1 = AngleOctant(phi1 + theta1 + 8 * r1).radians();
        const double meas = AngleOctant(phi1 + 8 * r1).radians();
        for (int s = 0; s < 2; ++s) {
            double pa = 0.0, pb = 0.0;
            const PureState a = mbqc_step_forced(rotated_graph(thetas), delta1, s, &pa);
            PureState b = mbqc_step_forced(linear_graph_state(n), meas, s, &pb);
            for (std::size_t j = 1; j < n; ++j)
                b = b.apply_on(gates::exp_iz_half(-thetas[j]), {static_cast<int>(j)});
            CHECK(fidelity(a, b) > 1.0 - 1e-9);
            CHECK(std::abs(pa - pb) < 1e-9);
        }
    }
}

TEST_CASE("honest BFK runs decode the intended output") {
    Rng rng(44);
    for (std::size_t n : {3, 4}) {
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<AngleOctant> prog;
            for (std::size_t j = 0; j + 1 < n; ++j)
                prog.emplace_back(static_cast<int>(rng.integer(16)));
            const auto run = bfk_run(prog, n, rng, 0.0);
            CHECK(run.fidelity_to_target > 1.0 - 1e-9);
            CHECK(run.transcript.size() == n - 1);
        }
    }
    CHECK_THROWS(bfk_run({AngleOctant(0)}, 3, rng, 0.0));  // angle count mismatch
}

TEST_CASE("honest MF runs decode the intended output and match BFK") {
    Rng rng(45);
    for (std::size_t n : {3, 4}) {
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<AngleOctant> prog;
            for (std::size_t j = 0; j + 1 < n; ++j)
                prog.emplace_back(static_cast<int>(rng.integer(16)));
            const double xi = trial % 2 ? 0.0 : 0.7;
            const auto mf = mf_run(prog, n, rng, xi);
            const auto bfk = bfk_run(prog, n, rng, xi);
            CHECK(mf.fidelity_to_target > 1.0 - 1e-9);
            CHECK(trace_distance(mf.unlocked.to_density(), bfk.unlocked.to_density()) < 1e-9);
        }
    }
}

TEST_CASE("attack rotations land on the deviated targets") {
    Rng rng(46);
    const std::vector<AngleOctant> id_prog{AngleOctant(0), AngleOctant(0)};
    const std::vector<AngleOctant> x_prog{AngleOctant(0), AngleOctant(8)};

    // U = I, xi = pi/2: post-unlock state is e^{i pi/4 Z}|+>
    const auto run_i = bfk_run(id_prog, 3, rng, M_PI / 2.0);
    const PureState dev_i = PureState::plus_states(1).apply(gates::exp_iz_half(M_PI / 2.0));
    CHECK(run_i.fidelity_to_target > 1.0 - 1e-9);
    CHECK(fidelity(run_i.unlocked, dev_i) > 1.0 - 1e-9);

    // U = X, xi = pi/2: post-unlock state is e^{-i pi/4 Z}|+> up to phase
    const auto run_x = mf_run(x_prog, 3, rng, M_PI / 2.0);
    const PureState dev_x = PureState::plus_states(1).apply(gates::exp_iz_half(-M_PI / 2.0));
    CHECK(fidelity(run_x.unlocked, dev_x) > 1.0 - 1e-9);

    // the two deviated outputs are orthogonal
    CHECK(std::abs(inner(dev_i, dev_x)) < 1e-12);
}

TEST_CASE("blindness gap") {
    CHECK(std::abs(blindness_gap("bfk", M_PI / 2.0) - 0.5) < 1e-9);
    CHECK(std::abs(blindness_gap("mf", M_PI / 2.0) - 0.5) < 1e-9);
    CHECK(std::abs(blindness_gap("bfk", 0.0)) < 1e-9);
    CHECK(std::abs(blindness_gap("bfk", M_PI / 4.0) - std::sin(M_PI / 4.0) / 2.0) < 1e-9);
    CHECK(std::abs(blindness_gap("mf", M_PI / 4.0) - std::sin(M_PI / 4.0) / 2.0) < 1e-9);
    CHECK_THROWS(blindness_gap("nope", 0.1));
}

TEST_CASE("quantum one-time pad") {
    Rng rng(47);
    // unlock inverts pad
    const DensityMatrix rho = random_state(2, rng).to_density();
    const OtpKey key{{1, 0}, {0, 1}};
    ComplexMatrix diff = qotp_unlock(qotp(rho, key), key).matrix();
    diff -= rho.matrix();
    CHECK(diff.max_abs() < 1e-10);
    // trivial key is the identity
    ComplexMatrix same = qotp(rho, OtpKey{{0, 0}, {0, 0}}).matrix();
    same -= rho.matrix();
    CHECK(same.max_abs() < 1e-10);
    // averaging over single-qubit keys gives I/2
    const DensityMatrix one = random_state(1, rng).to_density();
    ComplexMatrix avg(2, 2);
    for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 2; ++z) avg += qotp(one, OtpKey{{x}, {z}}).matrix();
    avg *= cplx(0.25, 0.0);
    avg -= DensityMatrix::maximally_mixed(1).matrix();
    CHECK(avg.max_abs() < 1e-9);
    CHECK_THROWS(qotp(rho, OtpKey{{0}, {0, 1}}));
}

TEST_CASE("server's padded output averages to the maximally mixed state") {
    // Honest BFK runs over many seeds: the pre-key server qubit, averaged
    // over the protocol's randomness, carries no information.
    const std::vector<AngleOctant> prog{AngleOctant(3), AngleOctant(11)};
    ComplexMatrix avg(2, 2);
    const int runs = 4000;
    for (int i = 0; i < runs; ++i) {
        Rng rng(derive_trial_seed(0xab, i));
        avg += bfk_run(prog, 3, rng, 0.0).server_final.to_density().matrix();
    }
    avg *= cplx(1.0 / runs, 0.0);
    avg -= DensityMatrix::maximally_mixed(1).matrix();
    CHECK(avg.max_abs() < 0.05);  // statistical, 4000 samples
}

TEST_CASE("client messages are uniform regardless of the angle program") {
    const int samples = 100000;
    auto histogram = [&](const std::vector<AngleOctant>& prog, std::uint64_t seed) {
        std::vector<std::size_t> counts(16, 0);
        for (int i = 0; i < samples; ++i) {
            Rng rng(derive_trial_seed(seed, i));
            const auto run = bfk_run(prog, 3, rng, 0.0);
            const auto k = static_cast<std::size_t>(
                std::llround(run.transcript[0].delta / (M_PI / 8.0)));
            counts[k % 16]++;
        }
        return counts;
    };
    const auto c1 = histogram({AngleOctant(3), AngleOctant(7)}, 1);
    const auto c2 = histogram({AngleOctant(12), AngleOctant(0)}, 2);
    CHECK(stats::uniformity_pvalue(c1) > 1e-4);
    CHECK(stats::uniformity_pvalue(c2) > 1e-4);
    double tv = 0.0;
    for (int k = 0; k < 16; ++k)
        tv += std::abs(static_cast<double>(c1[k]) - static_cast<double>(c2[k]));
    tv /= 2.0 * samples;
    CHECK(tv < 0.01);
}
