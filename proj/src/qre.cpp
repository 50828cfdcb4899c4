#include "qsim/qre.hpp"

#include "qsim/gates.hpp"

#include <json.hpp>

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace qsim::qre {

namespace {

double max_offdiagonal(const ComplexMatrix& m) {
    double v = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (r != c) v = std::max(v, std::abs(m(r, c)));
    return v;
}

std::vector<int> index_bits(std::size_t idx, std::size_t n) {
    std::vector<int> bits(n);
    for (std::size_t j = 0; j < n; ++j) bits[j] = static_cast<int>((idx >> (n - 1 - j)) & 1);
    return bits;
}

// Controlled-Hadamard (control = qubit 1) followed by tracing out the
// control: the one-qubit-output example channel shared by the
// measure-forward and label schemes.
Channel controlled_h_then_trace_first() {
    ComplexMatrix ch(4, 4);
    ch(0, 0) = 1.0;
    ch(1, 1) = 1.0;
    const ComplexMatrix h = gates::hadamard();
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) ch(2 + r, 2 + c) = h(r, c);
    return Channel::partial_trace_channel(2, {2}).compose(Channel::unitary(2, ch));
}

std::vector<DensityMatrix> basis_family(std::size_t n) {
    std::vector<DensityMatrix> fam;
    for (std::size_t i = 0; i < (std::size_t{1} << n); ++i)
        fam.push_back(PureState::basis(n, i).to_density());
    return fam;
}

nlohmann::json channel_to_json(const Channel& ch) {
    nlohmann::json ops = nlohmann::json::array();
    for (const auto& k : ch.kraus()) {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t r = 0; r < k.rows(); ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t c = 0; c < k.cols(); ++c)
                row.push_back({k(r, c).real(), k(r, c).imag()});
            rows.push_back(std::move(row));
        }
        ops.push_back(std::move(rows));
    }
    return {{"in", ch.in_qubits()}, {"out", ch.out_qubits()}, {"kraus", std::move(ops)}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& rows) {
    const std::size_t nr = rows.size(), nc = rows.at(0).size();
    ComplexMatrix m(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c)
            m(r, c) = cplx(rows[r][c][0].get<double>(), rows[r][c][1].get<double>());
    return m;
}

Channel channel_from_json(const nlohmann::json& j) {
    std::vector<ComplexMatrix> kraus;
    for (const auto& op : j.at("kraus")) kraus.push_back(matrix_from_json(op));
    return Channel(j.at("in").get<std::size_t>(), j.at("out").get<std::size_t>(),
                   std::move(kraus));
}

}  // namespace

void QreScheme::validate() const {
    if (family.empty()) throw std::invalid_argument("QreScheme: empty family");
    if (encode.in_qubits() != target.in_qubits())
        throw std::invalid_argument("QreScheme: encode/target input mismatch");
    if (decode.in_qubits() != encode.out_qubits())
        throw std::invalid_argument("QreScheme: decode input mismatch");
    if (decode.out_qubits() != target.out_qubits())
        throw std::invalid_argument("QreScheme: decode/target output mismatch");
    if (simulator.in_qubits() != target.out_qubits())
        throw std::invalid_argument("QreScheme: simulator input mismatch");
    if (simulator.out_qubits() != encode.out_qubits())
        throw std::invalid_argument("QreScheme: simulator/encode output mismatch");
    if (junk_qubits > target.out_qubits())
        throw std::invalid_argument("QreScheme: junk larger than target output");
    if (junk_qubits > 0 && (!junk_state || junk_state->qubits() != junk_qubits))
        throw std::invalid_argument("QreScheme: junk state missing or wrong size");
    for (const auto& rho : family)
        if (rho.qubits() != target.in_qubits())
            throw std::invalid_argument("QreScheme: family member dimension mismatch");
    if (bb84_n) {
        const std::size_t n = *bb84_n;
        if (family.size() != (std::size_t{2} << n))
            throw std::invalid_argument("QreScheme: challenge family has wrong size");
        if (target.out_qubits() != n + junk_qubits)
            throw std::invalid_argument("QreScheme: challenge output size mismatch");
    }
}

const DensityMatrix& QreScheme::sigma(int h, const std::vector<int>& m) const {
    if (!bb84_n) throw std::logic_error("QreScheme: no challenge family declared");
    const std::size_t n = *bb84_n;
    std::size_t idx = static_cast<std::size_t>(h) << n;
    for (std::size_t j = 0; j < n; ++j)
        idx |= static_cast<std::size_t>(m[j] & 1) << (n - 1 - j);
    return family[idx];
}

SchemeParams measure_params(const QreScheme& scheme) {
    scheme.validate();
    SchemeParams out;
    out.classical = true;
    for (const auto& rho : scheme.family) {
        const DensityMatrix fhat = scheme.encode.apply(rho);
        const DensityMatrix ideal = scheme.target.apply(rho);
        out.delta_hat = std::max(out.delta_hat, trace_distance(scheme.decode.apply(fhat), ideal));
        out.eps_hat = std::max(out.eps_hat, trace_distance(fhat, scheme.simulator.apply(ideal)));
        if (max_offdiagonal(fhat.matrix()) > 1e-9) out.classical = false;
    }
    return out;
}

QreScheme identity_scheme(std::size_t n) {
    QreScheme s;
    s.name = "identity";
    const Channel f = Channel::unitary(n, kron_power(gates::hadamard(), n));
    s.encode = f;
    s.decode = Channel::identity(n);
    s.simulator = Channel::identity(n);
    s.target = f;
    for (int h = 0; h < 2; ++h)
        for (std::size_t idx = 0; idx < (std::size_t{1} << n); ++idx)
            s.family.push_back(verify::bb84_state(1 - h, index_bits(idx, n)).to_density());
    s.bb84_n = n;
    s.validate();
    return s;
}

QreScheme noisy_identity_scheme(std::size_t n, double p) {
    QreScheme s = identity_scheme(n);
    s.name = "noisy-identity";
    s.encode = Channel::depolarizing(n, p).compose(s.encode);
    s.validate();
    return s;
}

QreScheme measure_forward_scheme() {
    QreScheme s;
    s.name = "measure-forward";
    s.target = controlled_h_then_trace_first();
    s.encode = Channel::dephasing(1).compose(s.target);
    s.decode = Channel::identity(1);
    s.simulator = Channel::dephasing(1);
    s.family = basis_family(2);
    s.validate();
    return s;
}

QreScheme label_scheme() {
    QreScheme s;
    s.name = "label";
    s.target = controlled_h_then_trace_first();
    s.encode = Channel::dephasing(2);
    s.decode = s.target;
    // Sim: Breidbart-measure the qubit, forward the inferred bit as the
    // label's low bit and guess the basis bit uniformly.
    const double c8 = std::cos(M_PI / 8.0), s8 = std::sin(M_PI / 8.0);
    const cplx mu[2][2] = {{c8, s8}, {-s8, c8}};
    std::vector<ComplexMatrix> kraus;
    for (int b = 0; b < 2; ++b)
        for (int m = 0; m < 2; ++m) {
            ComplexMatrix k(4, 2);
            for (int c = 0; c < 2; ++c)
                k(static_cast<std::size_t>(2 * b + m), static_cast<std::size_t>(c)) =
                    std::conj(mu[m][c]) / std::sqrt(2.0);
            kraus.push_back(std::move(k));
        }
    s.simulator = Channel(1, 2, std::move(kraus));
    s.family = basis_family(2);
    s.validate();
    return s;
}

QreScheme identity_on_classical_scheme() {
    QreScheme s;
    s.name = "identity-on-classical";
    s.target = Channel::identity(1);
    s.encode = Channel::dephasing(1);
    s.decode = Channel::identity(1);
    s.simulator = Channel::dephasing(1);
    s.family = basis_family(1);
    s.validate();
    return s;
}

QreScheme scheme_by_name(const std::string& name, std::size_t n) {
    if (name == "identity") return identity_scheme(n);
    if (name == "noisy-identity") return noisy_identity_scheme(n, 0.1);
    if (name == "measure-forward") return measure_forward_scheme();
    if (name == "label") return label_scheme();
    if (name == "identity-on-classical") return identity_on_classical_scheme();
    throw std::invalid_argument("unknown scheme: " + name);
}

std::string scheme_to_json(const QreScheme& scheme) {
    nlohmann::json j;
    j["name"] = scheme.name;
    j["encode"] = channel_to_json(scheme.encode);
    j["decode"] = channel_to_json(scheme.decode);
    j["simulator"] = channel_to_json(scheme.simulator);
    j["target"] = channel_to_json(scheme.target);
    j["junk_qubits"] = scheme.junk_qubits;
    if (scheme.junk_state) {
        nlohmann::json rows = nlohmann::json::array();
        const ComplexMatrix& m = scheme.junk_state->matrix();
        for (std::size_t r = 0; r < m.rows(); ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t c = 0; c < m.cols(); ++c)
                row.push_back({m(r, c).real(), m(r, c).imag()});
            rows.push_back(std::move(row));
        }
        j["junk_state"] = std::move(rows);
    }
    if (scheme.bb84_n) j["challenge_n"] = *scheme.bb84_n;
    nlohmann::json fam = nlohmann::json::array();
    for (const auto& rho : scheme.family) {
        const ComplexMatrix& m = rho.matrix();
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t r = 0; r < m.rows(); ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t c = 0; c < m.cols(); ++c)
                row.push_back({m(r, c).real(), m(r, c).imag()});
            rows.push_back(std::move(row));
        }
        fam.push_back({{"qubits", rho.qubits()}, {"matrix", std::move(rows)}});
    }
    j["family"] = std::move(fam);
    return j.dump(2);
}

QreScheme scheme_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    QreScheme s;
    s.name = j.at("name").get<std::string>();
    s.encode = channel_from_json(j.at("encode"));
    s.decode = channel_from_json(j.at("decode"));
    s.simulator = channel_from_json(j.at("simulator"));
    s.target = channel_from_json(j.at("target"));
    s.junk_qubits = j.value("junk_qubits", std::size_t{0});
    if (j.contains("junk_state"))
        s.junk_state = DensityMatrix(s.junk_qubits, matrix_from_json(j.at("junk_state")));
    if (j.contains("challenge_n")) s.bb84_n = j.at("challenge_n").get<std::size_t>();
    for (const auto& f : j.at("family"))
        s.family.emplace_back(f.at("qubits").get<std::size_t>(),
                              matrix_from_json(f.at("matrix")));
    s.validate();
    return s;
}

namespace {

void check_premise(const QreScheme& scheme, const HamiltonianSpec& spec) {
    scheme.validate();
    if (!scheme.bb84_n || *scheme.bb84_n != spec.n)
        throw std::invalid_argument("protocol_two_run: scheme has no challenge family for N");
    const std::size_t n = spec.n;
    for (int h = 0; h < 2; ++h)
        for (std::size_t idx = 0; idx < (std::size_t{1} << n); ++idx) {
            const std::vector<int> m = index_bits(idx, n);
            DensityMatrix want = verify::bb84_state(h, m).to_density();
            if (scheme.junk_qubits > 0) want = want.tensor(*scheme.junk_state);
            ComplexMatrix diff = scheme.target.apply(scheme.sigma(h, m)).matrix();
            diff -= want.matrix();
            if (diff.max_abs() > 1e-9)
                throw std::invalid_argument(
                    "protocol_two_run: target does not map challenges to the product form");
        }
}

// Per-challenge report distribution in the encoded protocol.
std::vector<double> encoded_distribution(const QreScheme& scheme, std::size_t n,
                                         const verify::ProverStrategy& strategy, int h,
                                         const std::vector<int>& m) {
    const DensityMatrix sent = scheme.encode.apply(scheme.sigma(h, m));
    if (strategy.kind == verify::ProverStrategy::Kind::HonestTeleport) {
        DensityMatrix decoded = scheme.decode.apply(sent);
        if (scheme.junk_qubits > 0) {
            std::vector<int> keep(n);
            for (std::size_t q = 0; q < n; ++q) keep[q] = static_cast<int>(q + 1);
            decoded = partial_trace(decoded, keep);
        }
        return verify::honest_outcome_distribution(decoded, *strategy.resource);
    }
    if (strategy.kind == verify::ProverStrategy::Kind::WrongBasisMeasure &&
        sent.qubits() != n)
        throw std::invalid_argument("protocol_two_run: strategy needs an n-qubit message");
    return verify::prover_distribution(strategy, sent);
}

}  // namespace

verify::AcceptanceResult protocol_two_run(const QreScheme& scheme, const HamiltonianSpec& spec,
                                          const verify::ProverStrategy& strategy, Mode mode,
                                          std::uint64_t trials, std::uint64_t seed) {
    check_premise(scheme, spec);
    spec.validate();
    const std::size_t n = spec.n;
    if (mode == Mode::Exact)
        return verify::acceptance_exact_general(
            spec, [&](int h, const std::vector<int>& m) {
                return encoded_distribution(scheme, n, strategy, h, m);
            });

    if (trials == 0) throw std::invalid_argument("protocol_two_run: trials must be positive");
    // Monte Carlo over challenges, reports, and term choices; per-challenge
    // distributions are cached since the state space is tiny.
    std::unordered_map<std::size_t, std::vector<double>> cache;
    std::vector<double> term_weights;
    for (const auto& t : spec.terms) term_weights.push_back(t.p);
    std::uint64_t accepted = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng trial(derive_trial_seed(seed, t));
        const int h = trial.bit();
        std::size_t idx = 0;
        std::vector<int> m(n);
        for (std::size_t j = 0; j < n; ++j) {
            m[j] = trial.bit();
            idx = idx * 2 + static_cast<std::size_t>(m[j]);
        }
        const std::size_t key = (static_cast<std::size_t>(h) << n) | idx;
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, encoded_distribution(scheme, n, strategy, h, m)).first;
        const std::size_t label = trial.sample(it->second);
        const auto& term = spec.terms[trial.sample(term_weights)];
        if (verify::verifier_decide(h, m, verify::unpack_report(label, n), term)) ++accepted;
    }
    verify::AcceptanceResult res;
    res.method = "monte-carlo";
    res.trials = trials;
    res.probability = static_cast<double>(accepted) / static_cast<double>(trials);
    res.std_error = std::sqrt(res.probability * (1.0 - res.probability) /
                              static_cast<double>(trials));
    return res;
}

verify::AcceptanceResult simulated_malicious_acceptance(const QreScheme& scheme,
                                                        const HamiltonianSpec& spec,
                                                        const Povm& attack) {
    check_premise(scheme, spec);
    return verify::acceptance_exact_general(spec, [&](int h, const std::vector<int>& m) {
        DensityMatrix plain = verify::bb84_state(h, m).to_density();
        if (scheme.junk_qubits > 0) plain = plain.tensor(*scheme.junk_state);
        const std::vector<double> raw = attack.distribution(scheme.simulator.apply(plain));
        std::vector<double> dist(std::size_t{1} << (2 * spec.n), 0.0);
        const auto& effects = attack.effects();
        for (std::size_t i = 0; i < effects.size(); ++i) dist.at(effects[i].label) += raw[i];
        return dist;
    });
}

GapResult completeness_soundness_gap(const QreScheme& scheme, double alpha, double beta) {
    const SchemeParams p = measure_params(scheme);
    GapResult g;
    g.c_prime = (1.0 - alpha) - 2.0 * p.delta_hat;
    g.s_prime = (1.0 - beta) + 2.0 * p.eps_hat;
    g.positive = g.c_prime - g.s_prime > 0.0;
    return g;
}

}  // namespace qsim::qre
