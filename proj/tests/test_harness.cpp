#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qsim/harness.hpp"
#include "qsim/rng.hpp"

#include <cstdlib>
#include <set>

using namespace qsim;
using namespace qsim::harness;

TEST_CASE("trial seed derivation") {
    CHECK(derive_trial_seed(123, 45) == derive_trial_seed(123, 45));
    Rng rng(50);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 10000; ++i) {
        const std::uint64_t master = rng.integer(std::uint64_t{1} << 62);
        CHECK(derive_trial_seed(master, 0) != derive_trial_seed(master, 1));
        CHECK(derive_trial_seed(master, i) != derive_trial_seed(master + 1, i));
        seen.insert(derive_trial_seed(0xfeed, i));
    }
    CHECK(seen.size() == 10000);  // injective over scanned indices
}

TEST_CASE("config validation") {
    CHECK_THROWS_WITH_AS(ExperimentConfig::from_json("{\"suite\": \"verify-tc\"}"),
                         "config missing field: seed", std::invalid_argument);
    CHECK_THROWS(ExperimentConfig::from_json("{\"seed\": 1}"));
    CHECK_THROWS(ExperimentConfig::from_json("{\"suite\": \"bogus\", \"seed\": 1}"));
    const auto cfg =
        ExperimentConfig::from_json("{\"suite\": \"bfk-demo\", \"seed\": 7}");
    CHECK(cfg.suite == "bfk-demo");
    CHECK(cfg.seed == 7);
}

TEST_CASE("assertion helpers") {
    const Assertion le = assert_le("x", 0.4, 0.5);
    CHECK(le.pass);
    CHECK(le.margin == doctest::Approx(0.1).epsilon(1e-12));
    const Assertion ge = assert_ge("y", 0.4, 0.5);
    CHECK_FALSE(ge.pass);
    CHECK(ge.margin == doctest::Approx(-0.1).epsilon(1e-12));
}

TEST_CASE("report JSON round trip") {
    ExperimentConfig cfg;
    cfg.suite = "bfk-demo";
    cfg.seed = 11;
    cfg.parameters["angles"] = std::vector<int>{2, 9};
    const ExperimentReport rep = run_suite(cfg);
    const ExperimentReport back = ExperimentReport::from_json(rep.to_json());
    CHECK(back.suite == rep.suite);
    CHECK(back.config.seed == rep.config.seed);
    CHECK(back.results == rep.results);
    REQUIRE(back.assertions.size() == rep.assertions.size());
    for (std::size_t i = 0; i < rep.assertions.size(); ++i) {
        CHECK(back.assertions[i].name == rep.assertions[i].name);
        CHECK(back.assertions[i].measured == rep.assertions[i].measured);
        CHECK(back.assertions[i].pass == rep.assertions[i].pass);
    }
}

TEST_CASE("equal configs reproduce identical payloads") {
    ExperimentConfig cfg;
    cfg.suite = "blind-attack";
    cfg.seed = 21;
    cfg.parameters["trials"] = 50;
    const ExperimentReport a = run_suite(cfg);
    const ExperimentReport b = run_suite(cfg);
    CHECK(a.results.dump() == b.results.dump());
    CHECK(a.all_pass());
}

TEST_CASE("verify-tc suite on one instance") {
    ExperimentConfig cfg;
    cfg.suite = "verify-tc";
    cfg.seed = 3;
    cfg.parameters["instances"] = std::vector<std::string>{"bell2-ferro"};
    cfg.parameters["trials"] = 20000;
    const ExperimentReport rep = run_suite(cfg);
    CHECK(rep.all_pass());
    CHECK(rep.results["instances"][0]["acceptance_exact"].get<double>() ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("noclone suite reports measured parameters") {
    ExperimentConfig cfg;
    cfg.suite = "noclone";
    cfg.seed = 5;
    cfg.parameters["schemes"] = std::vector<std::string>{"measure-forward"};
    cfg.parameters["k"] = std::vector<std::size_t>{1, 2};
    const ExperimentReport rep = run_suite(cfg);
    CHECK(rep.all_pass());
    const auto& row = rep.results["schemes"][0];
    CHECK(row["delta_hat"].get<double>() == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(row["eps_hat"].get<double>() == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(row["classical"].get<bool>());
}

TEST_CASE("unknown suite rejected") {
    ExperimentConfig cfg;
    cfg.suite = "nonsense";
    cfg.seed = 1;
    CHECK_THROWS(run_suite(cfg));
}

TEST_CASE("thread override environment variable") {
    setenv("QSIM_THREADS", "1", 1);
    CHECK(apply_thread_override() == 1);
    unsetenv("QSIM_THREADS");
    CHECK(apply_thread_override() >= 1);
}
