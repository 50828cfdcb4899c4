#include "qsim/harness.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace {

using qsim::harness::ExperimentConfig;
using qsim::harness::ExperimentReport;

int execute(ExperimentConfig cfg, bool print_transcript) {
    const ExperimentReport report = qsim::harness::run_suite(cfg);
    if (print_transcript && report.results.contains("transcript")) {
        std::printf("step  theta      delta      r  s\n");
        for (const auto& st : report.results["transcript"])
            std::printf("      %-10.6f %-10.6f %d  %d\n", st["theta"].get<double>(),
                        st["delta"].get<double>(), st["r"].get<int>(), st["s"].get<int>());
        std::printf("key x=%s z=%s  fidelity=%.12f\n",
                    report.results["key_x"].dump().c_str(),
                    report.results["key_z"].dump().c_str(),
                    report.results["fidelity"].get<double>());
    }
    for (const auto& a : report.assertions)
        std::printf("[%s] %-45s measured=%.10g bound=%.10g margin=%.3g\n",
                    a.pass ? "PASS" : "FAIL", a.name.c_str(), a.measured, a.bound, a.margin);
    if (cfg.output_path.empty()) std::printf("%s\n", report.to_json().c_str());
    return report.all_pass() ? 0 : 1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Delegated-verification protocol experiments"};
    app.require_subcommand(0, 1);
    app.fallthrough();

    std::string config_path, suite, out;
    std::uint64_t seed = 1;
    app.add_option("--config", config_path, "experiment config JSON file");
    app.add_option("--suite", suite, "suite to run")
        ->check(CLI::IsMember(qsim::harness::registered_suites()));
    app.add_option("--seed", seed, "master seed");
    app.add_option("--out", out, "report output path");

    // verify-tc
    auto* tc = app.add_subcommand("verify-tc", "trusted-center verification protocol");
    std::string tc_instance = "bell2-ferro", tc_spec, tc_mode = "exact";
    std::uint64_t tc_trials = 100000;
    bool tc_all = false;
    tc->add_option("--instance", tc_instance, "named instance");
    tc->add_flag("--all-instances", tc_all, "run every library instance");
    tc->add_option("--spec", tc_spec, "Hamiltonian spec JSON file");
    tc->add_option("--mode", tc_mode)->check(CLI::IsMember({"exact", "mc"}));
    tc->add_option("--trials", tc_trials, "Monte Carlo trials (mc mode)");

    // verify-qre
    auto* vq = app.add_subcommand("verify-qre", "encoded verification protocol");
    std::string vq_scheme = "identity", vq_instance = "bell2-ferro", vq_spec,
                vq_mode = "exact";
    std::uint64_t vq_trials = 100000;
    double vq_noise = 0.1;
    vq->add_option("--scheme", vq_scheme, "scheme name or JSON file");
    vq->add_option("--instance", vq_instance, "named instance");
    vq->add_option("--spec", vq_spec, "Hamiltonian spec JSON file");
    vq->add_option("--mode", vq_mode)->check(CLI::IsMember({"exact", "mc"}));
    vq->add_option("--trials", vq_trials, "Monte Carlo trials (mc mode)");
    vq->add_option("--noise", vq_noise, "depolarizing strength for the noised comparison");

    // noclone
    auto* nc = app.add_subcommand("noclone", "cloner bound verification");
    std::vector<std::string> nc_schemes;
    std::vector<std::size_t> nc_k;
    nc->add_option("--scheme", nc_schemes, "scheme name(s) or JSON file");
    nc->add_option("--k", nc_k, "copy counts");

    // blind-attack
    auto* ba = app.add_subcommand("blind-attack", "rotation attack on blind protocols");
    std::string ba_backend = "bfk";
    double ba_xi = M_PI / 2.0;
    std::uint64_t ba_trials = 200;
    ba->add_option("--backend", ba_backend)->check(CLI::IsMember({"bfk", "mf"}));
    ba->add_option("--xi", ba_xi, "attack rotation angle in radians");
    ba->add_option("--trials", ba_trials);

    // bfk-demo
    auto* bd = app.add_subcommand("bfk-demo", "transcript of one client-prepares run");
    std::vector<int> bd_angles{0, 8};
    std::size_t bd_n = 0;
    bd->add_option("--angles", bd_angles, "target angles in pi/8 units");
    bd->add_option("--n", bd_n, "wire length (defaults to angles + 1)");

    CLI11_PARSE(app, argc, argv);

    try {
        ExperimentConfig cfg;
        if (!config_path.empty()) cfg = ExperimentConfig::from_json(slurp(config_path));
        if (!suite.empty()) cfg.suite = suite;
        if (app.count("--seed") || config_path.empty()) cfg.seed = seed;
        if (!out.empty()) cfg.output_path = out;

        bool transcript = false;
        if (tc->parsed()) {
            cfg.suite = "verify-tc";
            if (!tc_spec.empty()) cfg.parameters["spec-path"] = tc_spec;
            else if (!tc_all) cfg.parameters["instances"] = std::vector<std::string>{tc_instance};
            if (tc_mode == "mc") cfg.parameters["trials"] = tc_trials;
        } else if (vq->parsed()) {
            cfg.suite = "verify-qre";
            if (vq_scheme.find(".json") != std::string::npos)
                cfg.parameters["scheme-path"] = vq_scheme;
            else
                cfg.parameters["scheme"] = vq_scheme;
            cfg.parameters["instance"] = vq_instance;
            if (!vq_spec.empty()) cfg.parameters["spec-path"] = vq_spec;
            cfg.parameters["noise"] = vq_noise;
            if (vq_mode == "mc") cfg.parameters["trials"] = vq_trials;
        } else if (nc->parsed()) {
            cfg.suite = "noclone";
            if (!nc_schemes.empty()) cfg.parameters["schemes"] = nc_schemes;
            if (!nc_k.empty()) cfg.parameters["k"] = nc_k;
        } else if (ba->parsed()) {
            cfg.suite = "blind-attack";
            cfg.parameters["backend"] = ba_backend;
            cfg.parameters["xi"] = ba_xi;
            cfg.parameters["trials"] = ba_trials;
        } else if (bd->parsed()) {
            cfg.suite = "bfk-demo";
            cfg.parameters["angles"] = bd_angles;
            if (bd_n > 0) cfg.parameters["n"] = bd_n;
            transcript = true;
        } else if (cfg.suite.empty()) {
            std::fprintf(stderr, "error: no suite selected (use --suite or a subcommand)\n");
            return 2;
        }
        return execute(std::move(cfg), transcript);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
