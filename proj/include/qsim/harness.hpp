#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace qsim::harness {

/// Applies the QSIM_THREADS environment override (if set) to the OpenMP
/// runtime and returns the effective thread count.
int apply_thread_override();

struct ExperimentConfig {
    std::string suite;
    std::uint64_t seed = 0;
    nlohmann::json parameters = nlohmann::json::object();
    std::string output_path;

    void validate() const;
    std::string to_json() const;
    static ExperimentConfig from_json(const std::string& text);
};

struct Assertion {
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    double margin = 0.0;  // >= 0 iff the assertion holds
    bool pass = false;
};

Assertion assert_le(std::string name, double measured, double bound);
Assertion assert_ge(std::string name, double measured, double bound);

struct ExperimentReport {
    std::string suite;
    ExperimentConfig config;
    nlohmann::json results = nlohmann::json::object();
    std::vector<Assertion> assertions;
    double wall_time_s = 0.0;

    bool all_pass() const;
    std::string to_json() const;
    static ExperimentReport from_json(const std::string& text);
};

const std::vector<std::string>& registered_suites();

/// Executes one suite (verify-tc | verify-qre | noclone | blind-attack |
/// bfk-demo | all). Equal configs give identical result payloads.
ExperimentReport run_suite(const ExperimentConfig& config);

}  // namespace qsim::harness
