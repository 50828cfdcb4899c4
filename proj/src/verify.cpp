#include "qsim/verify.hpp"

#include "qsim/gates.hpp"

#include <cmath>

namespace qsim::verify {

namespace {

constexpr std::size_t kExactCap = 4;

std::vector<int> bits_of(std::size_t value, std::size_t n) {
    std::vector<int> b(n);
    for (std::size_t j = 0; j < n; ++j) b[j] = (value >> (n - 1 - j)) & 1;
    return b;
}

}  // namespace

PureState bb84_state(int h, const std::vector<int>& m) {
    const std::size_t n = m.size();
    PureState s = PureState::basis(1, static_cast<std::size_t>(m[0]));
    if (h) s = s.apply(gates::hadamard());
    for (std::size_t j = 1; j < n; ++j) {
        PureState q = PureState::basis(1, static_cast<std::size_t>(m[j]));
        if (h) q = q.apply(gates::hadamard());
        s = s.tensor(q);
    }
    return s;
}

CenterSample sample_center(std::size_t n, Rng& rng) {
    const int h = rng.bit();
    std::vector<int> m(n);
    for (auto& b : m) b = rng.bit();
    return {h, m, bb84_state(h, m)};
}

std::size_t pack_report(const ProverReport& r) {
    const std::size_t n = r.x.size();
    std::size_t label = 0;
    for (std::size_t j = 0; j < n; ++j) label = (label << 1) | static_cast<std::size_t>(r.x[j]);
    for (std::size_t j = 0; j < n; ++j) label = (label << 1) | static_cast<std::size_t>(r.z[j]);
    return label;
}

ProverReport unpack_report(std::size_t label, std::size_t n) {
    ProverReport r;
    r.x = bits_of(label >> n, n);
    r.z = bits_of(label & ((std::size_t{1} << n) - 1), n);
    return r;
}

ProverStrategy ProverStrategy::honest(PureState e0) {
    ProverStrategy s{Kind::HonestTeleport, std::move(e0), {}, std::nullopt};
    return s;
}

ProverStrategy ProverStrategy::fixed_report(ProverReport r) {
    ProverStrategy s{Kind::FixedReport, std::nullopt, std::move(r), std::nullopt};
    return s;
}

ProverStrategy ProverStrategy::uniform_random() {
    return {Kind::UniformRandomReport, std::nullopt, {}, std::nullopt};
}

ProverStrategy ProverStrategy::wrong_basis() {
    return {Kind::WrongBasisMeasure, std::nullopt, {}, std::nullopt};
}

ProverStrategy ProverStrategy::custom(Povm povm) {
    return {Kind::CustomPovm, std::nullopt, {}, std::move(povm)};
}

ProverStrategy ProverStrategy::by_name(const std::string& name, const HamiltonianSpec& spec) {
    if (name == "honest") return honest(ground(spec).state);
    if (name == "uniform-random-report") return uniform_random();
    if (name == "wrong-basis-measure") return wrong_basis();
    if (name == "fixed-report") {
        ProverReport r;
        r.x.assign(spec.n, 0);
        r.z.assign(spec.n, 0);
        return fixed_report(std::move(r));
    }
    throw std::invalid_argument("unknown prover strategy: " + name);
}

std::string ProverStrategy::name() const {
    switch (kind) {
        case Kind::HonestTeleport: return "honest";
        case Kind::FixedReport: return "fixed-report";
        case Kind::UniformRandomReport: return "uniform-random-report";
        case Kind::WrongBasisMeasure: return "wrong-basis-measure";
        case Kind::CustomPovm: return "custom-povm";
    }
    return "?";
}

std::vector<double> honest_outcome_distribution(const PureState& received, const PureState& e0) {
    const std::size_t n = received.qubits();
    if (e0.qubits() != n) throw std::invalid_argument("honest prover: qubit count mismatch");
    PureState joint = e0.tensor(received);
    const ComplexMatrix bdag = gates::bell_basis_unitary().dagger();
    for (std::size_t j = 1; j <= n; ++j)
        joint = joint.apply_on(bdag, {static_cast<int>(j), static_cast<int>(n + j)});
    std::vector<double> p(joint.dim());
    for (std::size_t i = 0; i < joint.dim(); ++i) p[i] = std::norm(joint.amp(i));
    return p;
}

std::vector<double> honest_outcome_distribution(const DensityMatrix& received,
                                                const PureState& e0) {
    const std::size_t n = received.qubits();
    if (e0.qubits() != n) throw std::invalid_argument("honest prover: qubit count mismatch");
    DensityMatrix joint = e0.to_density().tensor(received);
    const ComplexMatrix bdag = gates::bell_basis_unitary().dagger();
    for (std::size_t j = 1; j <= n; ++j)
        joint = joint.conjugate_on(bdag, {static_cast<int>(j), static_cast<int>(n + j)});
    std::vector<double> p(joint.dim());
    for (std::size_t i = 0; i < joint.dim(); ++i)
        p[i] = std::max(0.0, joint.matrix()(i, i).real());
    return p;
}

namespace {

ProverReport sample_from_distribution(const std::vector<double>& p, std::size_t n, Rng& rng) {
    return unpack_report(rng.sample(p), n);
}

}  // namespace

ProverReport honest_prover_respond(const PureState& received, const PureState& e0, Rng& rng) {
    return sample_from_distribution(honest_outcome_distribution(received, e0), received.qubits(),
                                    rng);
}

ProverReport honest_prover_respond(const DensityMatrix& received, const PureState& e0, Rng& rng) {
    return sample_from_distribution(honest_outcome_distribution(received, e0), received.qubits(),
                                    rng);
}

bool verifier_decide(int h, const std::vector<int>& m, const ProverReport& report,
                     const HamiltonianTerm& term) {
    auto corrected = [&](int k) {
        const int flip = h ? report.z[static_cast<std::size_t>(k)]
                           : report.x[static_cast<std::size_t>(k)];
        return m[static_cast<std::size_t>(k)] ^ flip;
    };
    const int mi = corrected(term.i - 1);
    const int mj = corrected(term.j - 1);
    const int product = ((mi + mj) % 2 == 0) ? 1 : -1;
    return product == -term.s;
}

double verifier_accept_probability(const HamiltonianSpec& spec, int h, const std::vector<int>& m,
                                   const ProverReport& report) {
    double p = 0.0;
    for (const auto& t : spec.terms)
        if (verifier_decide(h, m, report, t)) p += t.p;
    return p;
}

std::vector<double> prover_distribution(const ProverStrategy& strategy,
                                        const DensityMatrix& received) {
    const std::size_t n = received.qubits();
    const std::size_t labels = std::size_t{1} << (2 * n);
    switch (strategy.kind) {
        case ProverStrategy::Kind::HonestTeleport:
            return honest_outcome_distribution(received, *strategy.resource);
        case ProverStrategy::Kind::FixedReport: {
            std::vector<double> p(labels, 0.0);
            p[pack_report(strategy.fixed)] = 1.0;
            return p;
        }
        case ProverStrategy::Kind::UniformRandomReport:
            return std::vector<double>(labels, 1.0 / static_cast<double>(labels));
        case ProverStrategy::Kind::WrongBasisMeasure: {
            // Computational measurement reported as x, with z = 0.
            std::vector<double> p(labels, 0.0);
            const std::size_t dim = std::size_t{1} << n;
            for (std::size_t xbits = 0; xbits < dim; ++xbits)
                p[xbits << n] = std::max(0.0, received.matrix()(xbits, xbits).real());
            return p;
        }
        case ProverStrategy::Kind::CustomPovm: {
            const std::vector<double> q = strategy.povm->distribution(received);
            std::vector<double> p(labels, 0.0);
            for (std::size_t i = 0; i < strategy.povm->effects().size(); ++i)
                p.at(strategy.povm->effects()[i].label) += q[i];
            return p;
        }
    }
    throw std::logic_error("unreachable");
}

AcceptanceResult acceptance_exact_general(const HamiltonianSpec& spec,
                                          const ChallengeDistribution& dist) {
    spec.validate();
    const std::size_t n = spec.n;
    if (n > kExactCap) throw std::invalid_argument("acceptance_exact: N too large for exact mode");
    const std::size_t settings = std::size_t{1} << (n + 1);
    double acc = 0.0;
#pragma omp parallel for reduction(+ : acc) schedule(dynamic)
    for (std::ptrdiff_t setting = 0; setting < static_cast<std::ptrdiff_t>(settings); ++setting) {
        const int h = static_cast<int>(setting >> n);
        const std::vector<int> m = bits_of(static_cast<std::size_t>(setting) & ((std::size_t{1} << n) - 1), n);
        const std::vector<double> p = dist(h, m);
        double s = 0.0;
        for (std::size_t label = 0; label < p.size(); ++label) {
            if (p[label] <= 0.0) continue;
            s += p[label] * verifier_accept_probability(spec, h, m, unpack_report(label, n));
        }
        acc += s;
    }
    acc /= static_cast<double>(settings);
    return {acc, "exact", 0, 0.0};
}

AcceptanceResult acceptance_exact(const HamiltonianSpec& spec, const ProverStrategy& strategy) {
    return acceptance_exact_general(spec, [&](int h, const std::vector<int>& m) {
        return prover_distribution(strategy, bb84_state(h, m).to_density());
    });
}

AcceptanceResult acceptance_mc(const HamiltonianSpec& spec, const ProverStrategy& strategy,
                               std::uint64_t trials, std::uint64_t seed) {
    spec.validate();
    if (trials < 1) throw std::invalid_argument("acceptance_mc: trials must be >= 1");
    const std::size_t n = spec.n;
    std::uint64_t accepted = 0;
#pragma omp parallel for reduction(+ : accepted) schedule(static)
    for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(trials); ++t) {
        Rng rng(derive_trial_seed(seed, static_cast<std::uint64_t>(t)));
        const CenterSample ch = sample_center(n, rng);
        ProverReport report;
        switch (strategy.kind) {
            case ProverStrategy::Kind::HonestTeleport:
                report = honest_prover_respond(ch.state, *strategy.resource, rng);
                break;
            case ProverStrategy::Kind::FixedReport:
                report = strategy.fixed;
                break;
            case ProverStrategy::Kind::UniformRandomReport: {
                report.x.resize(n);
                report.z.resize(n);
                for (auto& b : report.x) b = rng.bit();
                for (auto& b : report.z) b = rng.bit();
                break;
            }
            default: {
                const std::vector<double> p = prover_distribution(strategy, ch.state.to_density());
                report = unpack_report(rng.sample(p), n);
                break;
            }
        }
        // Term sampled with weight p_ij.
        std::vector<double> w;
        for (const auto& term : spec.terms) w.push_back(term.p);
        const auto& term = spec.terms[rng.sample(w)];
        if (verifier_decide(ch.h, ch.m, report, term)) ++accepted;
    }
    const double phat = static_cast<double>(accepted) / static_cast<double>(trials);
    const double se = std::sqrt(phat * (1.0 - phat) / static_cast<double>(trials));
    return {phat, "monte-carlo", trials, se};
}

}  // namespace qsim::verify
