#include "qsim/channel.hpp"
#include "qsim/harness.hpp"
#include "qsim/reference.hpp"
#include "qsim/rng.hpp"

#include <chrono>
#include <cstdio>
#include <functional>

using namespace qsim;

namespace {

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
    return m;
}

double time_of(const std::function<void()>& fn, int reps) {
    fn();  // warm-up
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() /
           reps;
}

void report(const char* name, double serial, double parallel, double err) {
    std::printf("%-24s serial %10.3f ms   parallel %10.3f ms   speedup %5.2fx   err %.2e\n",
                name, serial * 1e3, parallel * 1e3, serial / parallel, err);
}

}  // namespace

int main() {
    const int threads = harness::apply_thread_override();
    std::printf("threads: %d\n", threads);
    Rng rng(0xbe7c4);

    {
        const std::size_t n = 256;
        const ComplexMatrix a = random_matrix(n, n, rng), b = random_matrix(n, n, rng);
        ComplexMatrix out_p(1, 1), out_s(1, 1);
        const double tp = time_of([&] { out_p = matmul(a, b); }, 5);
        const double ts = time_of([&] { out_s = ref::matmul(a, b); }, 5);
        out_s -= out_p;
        report("matmul 256x256", ts, tp, out_s.max_abs());
    }
    {
        const ComplexMatrix a = random_matrix(64, 64, rng), b = random_matrix(8, 8, rng);
        ComplexMatrix out_p(1, 1), out_s(1, 1);
        const double tp = time_of([&] { out_p = kron(a, b); }, 10);
        const double ts = time_of([&] { out_s = ref::kron(a, b); }, 10);
        out_s -= out_p;
        report("kron 64x64 (x) 8x8", ts, tp, out_s.max_abs());
    }
    {
        const std::size_t n = 8;
        ComplexMatrix raw = random_matrix(256, 256, rng);
        ComplexMatrix herm = raw.dagger();
        herm += raw;
        DensityMatrix rho = DensityMatrix::maximally_mixed(n);
        const std::vector<int> keep{1, 3, 5};
        DensityMatrix out_p = rho;
        ComplexMatrix out_s(1, 1);
        const double tp = time_of([&] { out_p = partial_trace(rho, keep); }, 20);
        const double ts = time_of([&] { out_s = ref::partial_trace(rho.matrix(), n, keep); },
                                  20);
        out_s -= out_p.matrix();
        report("partial_trace 8->3", ts, tp, out_s.max_abs());
    }
    {
        const std::size_t n = 6;
        const Channel ch = Channel::depolarizing(n, 0.25);
        const DensityMatrix rho = DensityMatrix::maximally_mixed(n);
        DensityMatrix out_p = rho;
        ComplexMatrix out_s(1, 1);
        const double tp = time_of([&] { out_p = ch.apply(rho); }, 3);
        const double ts = time_of([&] { out_s = ref::apply_channel(ch.kraus(), rho.matrix()); },
                                  3);
        out_s -= out_p.matrix();
        report("depolarize 6 qubits", ts, tp, out_s.max_abs());
    }
    return 0;
}
