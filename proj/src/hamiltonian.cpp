#include "qsim/hamiltonian.hpp"

#include "qsim/eig.hpp"
#include "qsim/gates.hpp"
#include "qsim/rng.hpp"

#include <json.hpp>

#include <cmath>

namespace qsim {

void HamiltonianSpec::validate() const {
    if (n < 2 || n > kMaxDensityQubits)
        throw std::invalid_argument("HamiltonianSpec: qubit count out of range");
    if (terms.empty()) throw std::invalid_argument("HamiltonianSpec: no terms");
    double total = 0.0;
    for (const auto& t : terms) {
        if (t.i < 1 || t.j <= t.i || static_cast<std::size_t>(t.j) > n)
            throw std::invalid_argument("HamiltonianSpec: bad term indices");
        if (t.p <= 0.0) throw std::invalid_argument("HamiltonianSpec: weight must be positive");
        if (t.s != 1 && t.s != -1) throw std::invalid_argument("HamiltonianSpec: sign must be +-1");
        total += t.p;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("HamiltonianSpec: weights must sum to 1");
}

std::string HamiltonianSpec::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["terms"] = nlohmann::json::array();
    for (const auto& t : terms)
        j["terms"].push_back({{"i", t.i}, {"j", t.j}, {"p", t.p}, {"s", t.s}});
    return j.dump(2);
}

HamiltonianSpec HamiltonianSpec::from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    HamiltonianSpec spec;
    spec.n = j.at("n").get<std::size_t>();
    for (const auto& t : j.at("terms"))
        spec.terms.push_back({t.at("i").get<int>(), t.at("j").get<int>(), t.at("p").get<double>(),
                              t.at("s").get<int>()});
    spec.validate();
    return spec;
}

std::uint64_t HamiltonianSpec::content_hash() const {
    const std::string s = to_json();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

ComplexMatrix build(const HamiltonianSpec& spec) {
    spec.validate();
    const std::size_t dim = std::size_t{1} << spec.n;
    ComplexMatrix h(dim, dim);
    const ComplexMatrix xx = kron(gates::pauli_x(), gates::pauli_x());
    const ComplexMatrix zz = kron(gates::pauli_z(), gates::pauli_z());
    for (const auto& t : spec.terms) {
        ComplexMatrix pair = ComplexMatrix::identity(4);
        ComplexMatrix sx = xx;
        sx *= cplx(static_cast<double>(t.s));
        ComplexMatrix sz = zz;
        sz *= cplx(static_cast<double>(t.s));
        pair += 0.5 * (sx + sz);
        pair *= cplx(t.p / 2.0);
        h += embed(pair, spec.n, {t.i, t.j});
    }
    return h;
}

double energy(const HamiltonianSpec& spec, const PureState& psi) {
    if (psi.qubits() != spec.n) throw std::invalid_argument("energy: qubit count mismatch");
    return expectation(build(spec), psi);
}

GroundSolution ground(const HamiltonianSpec& spec) {
    const ComplexMatrix h = build(spec);
    const std::size_t dim = std::size_t{1} << spec.n;

    // Power iteration on 1.1*I - H; the spectrum of H lies in [0,1].
    ComplexMatrix shifted = ComplexMatrix::identity(dim);
    shifted *= cplx(1.1);
    shifted -= h;

    Rng rng(0x5eedULL);
    std::vector<cplx> v(dim);
    for (auto& a : v) a = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
    PureState psi = PureState::normalized(spec.n, std::move(v));

    auto residual_of = [&](const PureState& s, double lambda) {
        double r2 = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            cplx row = 0.0;
            for (std::size_t j = 0; j < dim; ++j) row += h(i, j) * s.amp(j);
            r2 += std::norm(row - lambda * s.amp(i));
        }
        return std::sqrt(r2);
    };

    double lambda = expectation(h, psi);
    bool converged = false;
    for (int it = 0; it < 200000; ++it) {
        std::vector<cplx> amps(dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) amps[i] += shifted(i, j) * psi.amp(j);
        psi = PureState::normalized(spec.n, std::move(amps));
        if (it % 16 == 15) {
            lambda = expectation(h, psi);
            if (residual_of(psi, lambda) < 1e-10) {
                converged = true;
                break;
            }
        }
    }
    lambda = expectation(h, psi);
    if (!converged && residual_of(psi, lambda) > 1e-8) {
        if (spec.n <= 6) {
            // Fall back to full diagonalization.
            EigResult e = hermitian_eig(h);
            std::vector<cplx> amps(dim);
            for (std::size_t r = 0; r < dim; ++r) amps[r] = e.vectors(r, 0);
            psi = PureState::normalized(spec.n, std::move(amps));
            lambda = e.values[0];
        } else {
            throw std::runtime_error("ground: power iteration did not converge");
        }
    }
    GroundSolution sol{lambda, psi, residual_of(psi, lambda)};
    return sol;
}

namespace {

std::vector<Instance> make_instances() {
    auto mk = [](std::string name, std::size_t n, std::vector<HamiltonianTerm> terms) {
        HamiltonianSpec spec{n, std::move(terms)};
        spec.validate();
        const double e0 = ground(spec).energy;
        return Instance{std::move(name), std::move(spec), e0 + 0.01, e0 + 0.2};
    };
    std::vector<Instance> v;
    v.push_back(mk("bell2-ferro", 2, {{1, 2, 1.0, -1}}));
    v.push_back(mk("bell2-anti", 2, {{1, 2, 1.0, +1}}));
    v.push_back(mk("chain3-uniform", 3, {{1, 2, 0.5, -1}, {2, 3, 0.5, -1}}));
    v.push_back(mk("triangle3-frustrated", 3,
                   {{1, 2, 1.0 / 3.0, +1}, {2, 3, 1.0 / 3.0, +1}, {1, 3, 1.0 / 3.0, +1}}));
    v.push_back(mk("chain3-mixed", 3, {{1, 2, 0.6, -1}, {2, 3, 0.4, +1}}));
    return v;
}

}  // namespace

const std::vector<Instance>& instance_library() {
    static const std::vector<Instance> lib = make_instances();
    return lib;
}

const Instance& find_instance(const std::string& name) {
    for (const auto& inst : instance_library())
        if (inst.name == name) return inst;
    throw std::invalid_argument("unknown instance: " + name);
}

}  // namespace qsim
