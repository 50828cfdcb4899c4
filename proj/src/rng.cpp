#include "qsim/rng.hpp"

#include <numeric>
#include <stdexcept>
#include <vector>

namespace qsim {

std::uint64_t derive_trial_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master ^ (index * 0x9e3779b97f4a7c15ULL);
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::size_t Rng::sample(const std::vector<double>& weights) {
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (total <= 0.0) throw std::runtime_error("Rng::sample: no positive weight");
    double u = uniform() * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        u -= weights[i];
        if (u <= 0.0) return i;
    }
    return weights.size() - 1;
}

}  // namespace qsim
