#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qsim/eig.hpp"
#include "qsim/hamiltonian.hpp"
#include "qsim/rng.hpp"

using namespace qsim;

namespace {

PureState random_state(std::size_t qubits, Rng& rng) {
    std::vector<cplx> amps(std::size_t{1} << qubits);
    for (auto& a : amps) a = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
    return PureState::normalized(qubits, std::move(amps));
}

}  // namespace

TEST_CASE("spec validation") {
    CHECK_NOTHROW(HamiltonianSpec{2, {{1, 2, 1.0, -1}}}.validate());
    CHECK_THROWS(HamiltonianSpec{2, {{2, 1, 1.0, -1}}}.validate());   // i >= j
    CHECK_THROWS(HamiltonianSpec{2, {{1, 3, 1.0, -1}}}.validate());   // j > N
    CHECK_THROWS(HamiltonianSpec{2, {{1, 2, 0.5, -1}}}.validate());   // weights != 1
    CHECK_THROWS(HamiltonianSpec{2, {{1, 2, 1.0, 2}}}.validate());    // bad sign
    CHECK_THROWS(HamiltonianSpec{2, {{1, 2, -1.0, -1}, {1, 2, 2.0, 1}}}.validate());
}

TEST_CASE("ferromagnetic pair spectrum {0, 0.5, 0.5, 1}") {
    const HamiltonianSpec spec{2, {{1, 2, 1.0, -1}}};
    const EigResult e = hermitian_eig(build(spec));
    CHECK(e.values[0] == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(e.values[1] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(e.values[2] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(e.values[3] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("ground states of the two-qubit pair terms") {
    const GroundSolution ferro = ground(HamiltonianSpec{2, {{1, 2, 1.0, -1}}});
    CHECK(ferro.energy == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(ferro.residual < 1e-8);
    const PureState phi_plus(2, {1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0)});
    CHECK(fidelity(ferro.state, phi_plus) > 1.0 - 1e-8);

    const GroundSolution anti = ground(HamiltonianSpec{2, {{1, 2, 1.0, +1}}});
    CHECK(anti.energy == doctest::Approx(0.0).epsilon(1e-9));
    const PureState singlet(2, {0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0});
    CHECK(fidelity(anti.state, singlet) > 1.0 - 1e-8);
}

TEST_CASE("ground energy matches dense diagonalization") {
    const HamiltonianSpec spec{3, {{1, 2, 0.5, -1}, {2, 3, 0.5, -1}}};
    const GroundSolution g = ground(spec);
    const EigResult e = hermitian_eig(build(spec));
    CHECK(std::abs(g.energy - e.values[0]) < 1e-8);
    CHECK(g.residual < 1e-8);
}

TEST_CASE("energy examples and bounds") {
    const HamiltonianSpec spec{2, {{1, 2, 1.0, -1}}};
    const PureState phi_plus(2, {1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0)});
    CHECK(energy(spec, phi_plus) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(energy(spec, PureState::basis(2, 0)) == doctest::Approx(0.25).epsilon(1e-10));

    Rng rng(21);
    const GroundSolution g = ground(spec);
    for (int trial = 0; trial < 100; ++trial) {
        const double e = energy(spec, random_state(2, rng));
        CHECK(e >= -1e-10);
        CHECK(e <= 1.0 + 1e-10);
        CHECK(g.energy <= e + 1e-9);
    }
}

TEST_CASE("spectrum always within [0, 1]") {
    const HamiltonianSpec spec{3, {{1, 2, 0.6, -1}, {2, 3, 0.3, 1}, {1, 3, 0.1, 1}}};
    const EigResult e = hermitian_eig(build(spec));
    CHECK(e.values.front() >= -1e-9);
    CHECK(e.values.back() <= 1.0 + 1e-9);
}

TEST_CASE("build is linear in term weights") {
    const HamiltonianSpec merged{3, {{1, 2, 0.6, -1}, {2, 3, 0.4, 1}}};
    const HamiltonianSpec a{3, {{1, 2, 1.0, -1}}}, b{3, {{2, 3, 1.0, 1}}};
    ComplexMatrix want = build(a);
    want *= cplx(0.6, 0.0);
    ComplexMatrix wb = build(b);
    wb *= cplx(0.4, 0.0);
    want += wb;
    want -= build(merged);
    CHECK(want.max_abs() < 1e-12);
}

TEST_CASE("JSON round trip and content hash") {
    const HamiltonianSpec spec{3, {{1, 2, 0.6, -1}, {2, 3, 0.4, 1}}};
    const HamiltonianSpec back = HamiltonianSpec::from_json(spec.to_json());
    CHECK(back.n == spec.n);
    REQUIRE(back.terms.size() == spec.terms.size());
    for (std::size_t i = 0; i < spec.terms.size(); ++i) {
        CHECK(back.terms[i].i == spec.terms[i].i);
        CHECK(back.terms[i].j == spec.terms[i].j);
        CHECK(back.terms[i].p == doctest::Approx(spec.terms[i].p).epsilon(1e-15));
        CHECK(back.terms[i].s == spec.terms[i].s);
    }
    CHECK(back.content_hash() == spec.content_hash());
    CHECK(spec.content_hash() != HamiltonianSpec{2, {{1, 2, 1.0, -1}}}.content_hash());
    CHECK_THROWS(HamiltonianSpec::from_json("{\"n\": 2, \"terms\": []}"));
}

TEST_CASE("instance library thresholds are consistent") {
    const auto& lib = instance_library();
    CHECK(lib.size() == 5);
    for (const auto& inst : lib) {
        const GroundSolution g = ground(inst.spec);
        CHECK(g.energy < inst.alpha);
        CHECK(inst.beta > inst.alpha);
        CHECK(inst.spec.n >= 2);
        CHECK(inst.spec.n <= 3);
    }
    CHECK(find_instance("bell2-ferro").spec.terms.size() == 1);
    CHECK_THROWS(find_instance("no-such-instance"));
}
