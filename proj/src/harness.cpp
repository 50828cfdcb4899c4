#include "qsim/harness.hpp"

#include "qsim/blind.hpp"
#include "qsim/nocloning.hpp"
#include "qsim/qre.hpp"
#include "qsim/stats.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qsim::harness {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

HamiltonianSpec resolve_spec(const nlohmann::json& params, const std::string& fallback) {
    if (params.contains("spec-path"))
        return HamiltonianSpec::from_json(slurp(params["spec-path"].get<std::string>()));
    return find_instance(params.value("instance", fallback)).spec;
}

qre::QreScheme resolve_scheme(const nlohmann::json& params, const std::string& fallback,
                              std::size_t n) {
    if (params.contains("scheme-path"))
        return qre::scheme_from_json(slurp(params["scheme-path"].get<std::string>()));
    return qre::scheme_by_name(params.value("scheme", fallback), n);
}

/// Computational-basis attack reporting labels (x, z=0); the canonical
/// malicious strategy shared by the qre comparison suites.
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

Assertion from_flag(std::string name, bool ok) {
    return assert_ge(std::move(name), ok ? 1.0 : 0.0, 1.0);
}

void suite_verify_tc(const ExperimentConfig& cfg, ExperimentReport& rep) {
    std::vector<std::string> names;
    if (cfg.parameters.contains("instances"))
        names = cfg.parameters["instances"].get<std::vector<std::string>>();
    else
        for (const auto& inst : instance_library()) names.push_back(inst.name);
    const std::uint64_t trials = cfg.parameters.value("trials", std::uint64_t{0});
    nlohmann::json per = nlohmann::json::array();
    for (const std::string& name : names) {
        const Instance& inst = find_instance(name);
        const GroundSolution g = ground(inst.spec);
        const auto honest = verify::ProverStrategy::honest(g.state);
        const auto exact = verify::acceptance_exact(inst.spec, honest);
        rep.assertions.push_back(assert_le(name + "/completeness-gap",
                                           std::abs(exact.probability - (1.0 - g.energy)),
                                           1e-8));
        nlohmann::json row = {{"instance", name},
                              {"ground_energy", g.energy},
                              {"acceptance_exact", exact.probability}};
        if (trials > 0) {
            const auto mc = verify::acceptance_mc(inst.spec, honest, trials, cfg.seed);
            rep.assertions.push_back(assert_le(name + "/mc-consistency",
                                               std::abs(mc.probability - exact.probability),
                                               5.0 * mc.std_error + 0.01));
            row["acceptance_mc"] = mc.probability;
            row["mc_std_error"] = mc.std_error;
        }
        per.push_back(std::move(row));
    }
    rep.results["instances"] = std::move(per);
}

void suite_verify_qre(const ExperimentConfig& cfg, ExperimentReport& rep) {
    const HamiltonianSpec spec = resolve_spec(cfg.parameters, "bell2-ferro");
    const Instance& inst = find_instance(cfg.parameters.value("instance", "bell2-ferro"));
    const double noise = cfg.parameters.value("noise", 0.1);
    const GroundSolution g = ground(spec);
    const auto honest = verify::ProverStrategy::honest(g.state);
    const auto plain = verify::acceptance_exact(spec, honest);

    const qre::QreScheme scheme = resolve_scheme(cfg.parameters, "identity", spec.n);
    const qre::SchemeParams params = qre::measure_params(scheme);
    const auto encoded = qre::protocol_two_run(scheme, spec, honest, qre::Mode::Exact);
    const double equiv_tol = params.delta_hat == 0.0 ? 1e-9 : 2.0 * params.delta_hat + 1e-8;
    rep.assertions.push_back(assert_le("honest-acceptance-shift",
                                       std::abs(encoded.probability - plain.probability),
                                       equiv_tol));

    const qre::QreScheme noisy = qre::noisy_identity_scheme(spec.n, noise);
    const qre::SchemeParams noisy_params = qre::measure_params(noisy);
    const auto noisy_acc = qre::protocol_two_run(noisy, spec, honest, qre::Mode::Exact);
    rep.assertions.push_back(assert_le("noised-honest-shift",
                                       std::abs(noisy_acc.probability - plain.probability),
                                       2.0 * noisy_params.delta_hat + 1e-8));

    const Povm attack = computational_attack(spec.n);
    const auto strat = verify::ProverStrategy::custom(attack);
    const auto direct = qre::protocol_two_run(noisy, spec, strat, qre::Mode::Exact);
    const auto simulated = qre::simulated_malicious_acceptance(noisy, spec, attack);
    rep.assertions.push_back(assert_le("malicious-replay-shift",
                                       std::abs(direct.probability - simulated.probability),
                                       2.0 * noisy_params.eps_hat + 1e-8));

    const std::uint64_t trials = cfg.parameters.value("trials", std::uint64_t{0});
    if (trials > 0) {
        const auto mc = qre::protocol_two_run(scheme, spec, honest, qre::Mode::MonteCarlo,
                                              trials, cfg.seed);
        rep.assertions.push_back(assert_le("encoded-mc-consistency",
                                           std::abs(mc.probability - encoded.probability),
                                           5.0 * mc.std_error + 0.01));
        rep.results["acceptance_encoded_mc"] = mc.probability;
    }

    const qre::GapResult gap = qre::completeness_soundness_gap(noisy, inst.alpha, inst.beta);
    rep.results["scheme"] = scheme.name;
    rep.results["delta_hat"] = params.delta_hat;
    rep.results["eps_hat"] = params.eps_hat;
    rep.results["classical"] = params.classical;
    rep.results["noisy_delta_hat"] = noisy_params.delta_hat;
    rep.results["noisy_eps_hat"] = noisy_params.eps_hat;
    rep.results["acceptance_plain"] = plain.probability;
    rep.results["acceptance_encoded"] = encoded.probability;
    rep.results["acceptance_noisy"] = noisy_acc.probability;
    rep.results["c_prime"] = gap.c_prime;
    rep.results["s_prime"] = gap.s_prime;
    rep.results["gap_positive"] = gap.positive;
}

void suite_noclone(const ExperimentConfig& cfg, ExperimentReport& rep) {
    std::vector<std::string> names =
        cfg.parameters.value("schemes", std::vector<std::string>{"identity-on-classical",
                                                                 "label", "measure-forward"});
    std::vector<std::size_t> ks =
        cfg.parameters.value("k", std::vector<std::size_t>{1, 2, 3});
    nlohmann::json per = nlohmann::json::array();
    for (const std::string& name : names) {
        const qre::QreScheme scheme =
            name == "file" ? resolve_scheme(cfg.parameters, name, 2) : qre::scheme_by_name(name);
        const qre::SchemeParams params = qre::measure_params(scheme);
        const std::vector<double> grid = nocloning::default_a_grid(params.delta_hat);
        nlohmann::json row = {{"scheme", scheme.name},
                              {"delta_hat", params.delta_hat},
                              {"eps_hat", params.eps_hat},
                              {"classical", params.classical},
                              {"a_grid", grid}};
        for (std::size_t k : ks) {
            const auto report = nocloning::verify_clone_bound(scheme, k, grid);
            rep.assertions.push_back(assert_ge(
                scheme.name + "/k=" + std::to_string(k) + "/clone-margin",
                report.worst_margin, -1e-8));
            row["lhs_k" + std::to_string(k)] = report.lhs;
            row["fidelity_k" + std::to_string(k)] = report.fidelities;
            for (std::size_t gi = 0; gi < grid.size(); ++gi)
                rep.assertions.push_back(from_flag(
                    scheme.name + "/k=" + std::to_string(k) + "/a" + std::to_string(gi) +
                        "/fidelity-bound",
                    nocloning::fidelity_lower_bound_check(scheme, k, grid[gi])));
        }
        double worst_mass_margin = -1e300;
        for (std::size_t i = 0; i < scheme.family.size(); ++i)
            for (double a : grid) {
                const double mass = nocloning::gap_set_mass(scheme, i, a);
                worst_mass_margin = std::max(worst_mass_margin, mass - params.delta_hat / a);
            }
        rep.assertions.push_back(
            assert_le(scheme.name + "/markov-mass-excess", worst_mass_margin, 1e-8));
        bool chain_applicable = true;
        try {
            rep.assertions.push_back(
                from_flag(scheme.name + "/chain", nocloning::chain_inequality_check(scheme)));
        } catch (const std::invalid_argument&) {
            chain_applicable = false;  // family never reaches |0> and |+>
        }
        row["chain_applicable"] = chain_applicable;
        per.push_back(std::move(row));
    }
    rep.results["schemes"] = std::move(per);
}

void suite_blind_attack(const ExperimentConfig& cfg, ExperimentReport& rep) {
    const std::string backend = cfg.parameters.value("backend", "bfk");
    const double xi = cfg.parameters.value("xi", M_PI / 2.0);
    const std::uint64_t trials = cfg.parameters.value("trials", std::uint64_t{200});
    const std::vector<blind::AngleOctant> programs[2] = {
        {blind::AngleOctant(0), blind::AngleOctant(0)},
        {blind::AngleOctant(0), blind::AngleOctant(8)}};
    double min_fid = 1.0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng(derive_trial_seed(cfg.seed, t));
        const auto& prog = programs[t % 2];
        const blind::BlindRunResult run = backend == "mf" ? blind::mf_run(prog, 3, rng, xi)
                                                          : blind::bfk_run(prog, 3, rng, xi);
        min_fid = std::min(min_fid, run.fidelity_to_target);
    }
    rep.assertions.push_back(assert_ge("post-unlock-fidelity", min_fid, 1.0 - 1e-9));
    const double gap = blind::blindness_gap(backend, xi);
    if (std::abs(xi - M_PI / 2.0) < 1e-12)
        rep.assertions.push_back(assert_le("gap-pi-half-error", std::abs(gap - 0.5), 1e-9));
    rep.results["backend"] = backend;
    rep.results["xi"] = xi;
    rep.results["trials"] = trials;
    rep.results["min_fidelity"] = min_fid;
    rep.results["blindness_gap"] = gap;
}

void suite_bfk_demo(const ExperimentConfig& cfg, ExperimentReport& rep) {
    std::vector<int> raw = cfg.parameters.value("angles", std::vector<int>{0, 8});
    std::vector<blind::AngleOctant> prog;
    for (int k : raw) prog.emplace_back(k);
    const std::size_t n = cfg.parameters.value("n", prog.size() + 1);
    Rng rng(cfg.seed);
    const blind::BlindRunResult run = blind::bfk_run(prog, n, rng, 0.0);
    rep.assertions.push_back(assert_ge("decode-fidelity", run.fidelity_to_target, 1.0 - 1e-9));
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& st : run.transcript)
        steps.push_back({{"theta", st.theta}, {"delta", st.delta}, {"r", st.r}, {"s", st.s}});
    rep.results["transcript"] = std::move(steps);
    rep.results["key_x"] = run.key.x;
    rep.results["key_z"] = run.key.z;
    rep.results["fidelity"] = run.fidelity_to_target;
}

}  // namespace

int apply_thread_override() {
    if (const char* env = std::getenv("QSIM_THREADS")) {
        const int t = std::atoi(env);
        if (t > 0) omp_set_num_threads(t);
    }
    return omp_get_max_threads();
}

void ExperimentConfig::validate() const {
    const auto& reg = registered_suites();
    if (std::find(reg.begin(), reg.end(), suite) == reg.end())
        throw std::invalid_argument("unknown suite: " + suite);
    if (!parameters.is_object()) throw std::invalid_argument("parameters must be an object");
}

std::string ExperimentConfig::to_json() const {
    return nlohmann::json{{"suite", suite},
                          {"seed", seed},
                          {"parameters", parameters},
                          {"out", output_path}}
        .dump(2);
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("seed")) throw std::invalid_argument("config missing field: seed");
    if (!j.contains("suite")) throw std::invalid_argument("config missing field: suite");
    ExperimentConfig cfg;
    cfg.suite = j["suite"].get<std::string>();
    cfg.seed = j["seed"].get<std::uint64_t>();
    cfg.parameters = j.value("parameters", nlohmann::json::object());
    cfg.output_path = j.value("out", std::string{});
    cfg.validate();
    return cfg;
}

Assertion assert_le(std::string name, double measured, double bound) {
    Assertion a{std::move(name), measured, bound, bound - measured, false};
    a.pass = a.margin >= 0.0;
    return a;
}

Assertion assert_ge(std::string name, double measured, double bound) {
    Assertion a{std::move(name), measured, bound, measured - bound, false};
    a.pass = a.margin >= 0.0;
    return a;
}

bool ExperimentReport::all_pass() const {
    for (const auto& a : assertions)
        if (!a.pass) return false;
    return !assertions.empty();
}

std::string ExperimentReport::to_json() const {
    nlohmann::json asserts = nlohmann::json::array();
    for (const auto& a : assertions)
        asserts.push_back({{"name", a.name},
                           {"measured", a.measured},
                           {"bound", a.bound},
                           {"margin", a.margin},
                           {"pass", a.pass}});
    return nlohmann::json{{"suite", suite},
                          {"config", nlohmann::json::parse(config.to_json())},
                          {"results", results},
                          {"assertions", std::move(asserts)},
                          {"all_pass", all_pass()},
                          {"wall_time_s", wall_time_s}}
        .dump(2);
}

ExperimentReport ExperimentReport::from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    ExperimentReport rep;
    rep.suite = j.at("suite").get<std::string>();
    rep.config = ExperimentConfig::from_json(j.at("config").dump());
    rep.results = j.at("results");
    for (const auto& a : j.at("assertions"))
        rep.assertions.push_back({a.at("name").get<std::string>(),
                                  a.at("measured").get<double>(), a.at("bound").get<double>(),
                                  a.at("margin").get<double>(), a.at("pass").get<bool>()});
    rep.wall_time_s = j.value("wall_time_s", 0.0);
    return rep;
}

const std::vector<std::string>& registered_suites() {
    static const std::vector<std::string> suites{"verify-tc", "verify-qre", "noclone",
                                                 "blind-attack", "bfk-demo", "all"};
    return suites;
}

ExperimentReport run_suite(const ExperimentConfig& config) {
    config.validate();
    apply_thread_override();
    const auto start = std::chrono::steady_clock::now();
    ExperimentReport rep;
    rep.suite = config.suite;
    rep.config = config;
    if (config.suite == "verify-tc") {
        suite_verify_tc(config, rep);
    } else if (config.suite == "verify-qre") {
        suite_verify_qre(config, rep);
    } else if (config.suite == "noclone") {
        suite_noclone(config, rep);
    } else if (config.suite == "blind-attack") {
        suite_blind_attack(config, rep);
    } else if (config.suite == "bfk-demo") {
        suite_bfk_demo(config, rep);
    } else {  // all
        const std::vector<std::string> subs{"verify-tc", "verify-qre", "noclone",
                                            "blind-attack", "bfk-demo"};
        for (std::size_t i = 0; i < subs.size(); ++i) {
            ExperimentConfig sub = config;
            sub.suite = subs[i];
            sub.seed = derive_trial_seed(config.seed, i);
            sub.parameters = config.parameters.value(subs[i], nlohmann::json::object());
            ExperimentReport inner = run_suite(sub);
            rep.results[subs[i]] = std::move(inner.results);
            for (auto& a : inner.assertions) {
                a.name = subs[i] + "/" + a.name;
                rep.assertions.push_back(std::move(a));
            }
        }
    }
    rep.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!config.output_path.empty()) {
        std::ofstream out(config.output_path);
        if (!out) throw std::runtime_error("cannot write " + config.output_path);
        out << rep.to_json() << '\n';
    }
    return rep;
}

}  // namespace qsim::harness
