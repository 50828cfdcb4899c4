#pragma once

#include <cstdint>
#include <random>

namespace qsim {

/// Counter-based seed derivation (splitmix64 over master ^ index).
std::uint64_t derive_trial_seed(std::uint64_t master, std::uint64_t index);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return dist_(engine_); }
    int bit() { return engine_() & 1; }
    std::uint64_t integer(std::uint64_t bound) {  // uniform in [0, bound)
        std::uniform_int_distribution<std::uint64_t> d(0, bound - 1);
        return d(engine_);
    }

    /// Samples an index from an (unnormalized) weight vector.
    std::size_t sample(const std::vector<double>& weights);

private:
    std::mt19937_64 engine_;
    std::uniform_real_distribution<double> dist_{0.0, 1.0};
};

}  // namespace qsim
