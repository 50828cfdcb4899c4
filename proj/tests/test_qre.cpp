#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qsim/qre.hpp"

using namespace qsim;
using verify::ProverStrategy;

namespace {

Povm computational_attack(std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    std::vector<PovmEffect> effects;
    for (std::size_t x = 0; x < dim; ++x) {
        ComplexMatrix op(dim, dim);
        op(x, x) = 1.0;
        effects.push_back({x << n, std::move(op)});
    }
    return Povm(std::move(effects));
}

}  // namespace

TEST_CASE("measured scheme parameters across the zoo") {
    auto p = qre::measure_params(qre::identity_scheme(2));
    CHECK(p.delta_hat == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(p.eps_hat == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_FALSE(p.classical);

    p = qre::measure_params(qre::measure_forward_scheme());
    CHECK(std::abs(p.delta_hat - 0.5) < 1e-9);
    CHECK(p.eps_hat == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(p.classical);

    p = qre::measure_params(qre::label_scheme());
    CHECK(p.delta_hat == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(std::abs(p.eps_hat - 0.5732) < 1e-4);
    // exact value 1 - cos^2(pi/8)/2
    CHECK(std::abs(p.eps_hat - (1.0 - 0.5 * std::pow(std::cos(M_PI / 8.0), 2))) < 1e-10);
    CHECK(p.classical);

    p = qre::measure_params(qre::identity_on_classical_scheme());
    CHECK(p.delta_hat == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(p.eps_hat == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(p.classical);
}

TEST_CASE("self-consistency: no family member exceeds the measured maxima") {
    for (const char* name :
         {"identity", "noisy-identity", "measure-forward", "label", "identity-on-classical"}) {
        const auto s = qre::scheme_by_name(name, 2);
        const auto p = qre::measure_params(s);
        for (const auto& rho : s.family) {
            const auto fhat = s.encode.apply(rho);
            const auto ideal = s.target.apply(rho);
            CHECK(trace_distance(s.decode.apply(fhat), ideal) <= p.delta_hat + 1e-12);
            CHECK(trace_distance(fhat, s.simulator.apply(ideal)) <= p.eps_hat + 1e-12);
        }
    }
}

TEST_CASE("identity scheme reproduces the unencoded protocol exactly") {
    for (const char* inst : {"bell2-ferro", "bell2-anti"}) {
        const HamiltonianSpec spec = find_instance(inst).spec;
        const auto scheme = qre::identity_scheme(spec.n);
        for (const auto& strat : {ProverStrategy::honest(ground(spec).state),
                                  ProverStrategy::uniform_random(),
                                  ProverStrategy::wrong_basis()}) {
            const double encoded =
                qre::protocol_two_run(scheme, spec, strat, qre::Mode::Exact).probability;
            const double plain = verify::acceptance_exact(spec, strat).probability;
            CHECK(std::abs(encoded - plain) < 1e-9);
        }
    }
}

TEST_CASE("noised encoding degrades honest acceptance by at most 2*delta") {
    const HamiltonianSpec spec = find_instance("bell2-ferro").spec;
    const auto honest = ProverStrategy::honest(ground(spec).state);
    const double plain = verify::acceptance_exact(spec, honest).probability;
    for (double noise : {0.05, 0.1, 0.3}) {
        const auto scheme = qre::noisy_identity_scheme(spec.n, noise);
        const auto p = qre::measure_params(scheme);
        CHECK(p.delta_hat > 0.0);
        const double encoded =
            qre::protocol_two_run(scheme, spec, honest, qre::Mode::Exact).probability;
        CHECK(std::abs(encoded - plain) <= 2.0 * p.delta_hat + 1e-8);
    }
}

TEST_CASE("simulated malicious prover tracks the encoded attack within 2*eps") {
    const HamiltonianSpec spec = find_instance("bell2-anti").spec;
    const auto scheme = qre::noisy_identity_scheme(spec.n, 0.1);
    const auto p = qre::measure_params(scheme);
    const Povm attack = computational_attack(spec.n);
    const double direct =
        qre::protocol_two_run(scheme, spec, ProverStrategy::custom(attack), qre::Mode::Exact)
            .probability;
    const double simulated =
        qre::simulated_malicious_acceptance(scheme, spec, attack).probability;
    CHECK(std::abs(direct - simulated) <= 2.0 * p.eps_hat + 1e-8);
}

TEST_CASE("monte carlo mode matches exact mode") {
    const HamiltonianSpec spec = find_instance("bell2-ferro").spec;
    const auto scheme = qre::noisy_identity_scheme(spec.n, 0.1);
    const auto honest = ProverStrategy::honest(ground(spec).state);
    const auto exact = qre::protocol_two_run(scheme, spec, honest, qre::Mode::Exact);
    const auto mc = qre::protocol_two_run(scheme, spec, honest, qre::Mode::MonteCarlo, 50000, 5);
    CHECK(std::abs(mc.probability - exact.probability) <= 5.0 * mc.std_error + 1e-9);
    CHECK_THROWS(qre::protocol_two_run(scheme, spec, honest, qre::Mode::MonteCarlo, 0, 5));
}

TEST_CASE("completeness/soundness gap arithmetic") {
    auto g = qre::completeness_soundness_gap(qre::identity_scheme(2), 0.0, 0.2);
    CHECK(g.c_prime == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g.s_prime == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(g.positive);

    // depolarizing strength chosen so delta_hat = eps_hat = 0.05
    g = qre::completeness_soundness_gap(qre::noisy_identity_scheme(2, 0.05 / 0.75), 0.0, 0.2);
    CHECK(std::abs(g.c_prime - 0.9) < 1e-9);
    CHECK(std::abs(g.s_prime - 0.9) < 1e-9);
    CHECK_FALSE(g.positive);

    // measure-forward's delta_hat = 0.5 makes the protocol unusable
    g = qre::completeness_soundness_gap(qre::measure_forward_scheme(), 0.0, 0.2);
    CHECK(g.c_prime <= 0.0 + 1e-12);
    CHECK_FALSE(g.positive);
}

TEST_CASE("premise checking") {
    const HamiltonianSpec spec = find_instance("bell2-ferro").spec;
    const auto honest = ProverStrategy::honest(ground(spec).state);
    // measure-forward has no challenge family at all
    CHECK_THROWS(qre::protocol_two_run(qre::measure_forward_scheme(), spec, honest,
                                       qre::Mode::Exact));
    // scheme whose target does not produce the challenge form
    auto broken = qre::identity_scheme(2);
    broken.target = Channel::identity(2);
    CHECK_THROWS(qre::protocol_two_run(broken, spec, honest, qre::Mode::Exact));
}

TEST_CASE("scheme JSON round trip") {
    for (const char* name : {"identity", "label", "measure-forward"}) {
        const auto s = qre::scheme_by_name(name, 2);
        const auto back = qre::scheme_from_json(qre::scheme_to_json(s));
        CHECK(back.name == s.name);
        const auto p0 = qre::measure_params(s), p1 = qre::measure_params(back);
        CHECK(std::abs(p0.delta_hat - p1.delta_hat) < 1e-12);
        CHECK(std::abs(p0.eps_hat - p1.eps_hat) < 1e-12);
        CHECK(p0.classical == p1.classical);
    }
    CHECK_THROWS(qre::scheme_by_name("no-such-scheme"));
}

TEST_CASE("scheme validation rejects mismatched channels") {
    auto s = qre::identity_scheme(2);
    s.decode = Channel::identity(1);
    CHECK_THROWS(s.validate());
    s = qre::identity_scheme(2);
    s.family.clear();
    CHECK_THROWS(s.validate());
}
