#include "qsim/reference.hpp"

namespace qsim::ref {

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t m = a.rows(), n = b.cols(), k = a.cols();
    ComplexMatrix c(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (std::size_t l = 0; l < k; ++l) s += a(i, l) * b(l, j);
            c(i, j) = s;
        }
    return c;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    c(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    return c;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, std::size_t n,
                            const std::vector<int>& keep) {
    const std::size_t k = keep.size();
    std::vector<bool> kept(n + 1, false);
    for (int q : keep) kept[static_cast<std::size_t>(q)] = true;
    std::vector<std::size_t> keep_shift, trace_shift;
    for (int q : keep) keep_shift.push_back(n - static_cast<std::size_t>(q));
    for (std::size_t q = 1; q <= n; ++q)
        if (!kept[q]) trace_shift.push_back(n - q);

    const std::size_t outdim = std::size_t{1} << k;
    const std::size_t tdim = std::size_t{1} << (n - k);
    ComplexMatrix out(outdim, outdim);
    for (std::size_t r = 0; r < outdim; ++r)
        for (std::size_t c = 0; c < outdim; ++c)
            for (std::size_t t = 0; t < tdim; ++t) {
                std::size_t fr = 0, fc = 0;
                for (std::size_t i = 0; i < k; ++i) {
                    fr |= ((r >> (k - 1 - i)) & 1) << keep_shift[i];
                    fc |= ((c >> (k - 1 - i)) & 1) << keep_shift[i];
                }
                for (std::size_t i = 0; i < trace_shift.size(); ++i) {
                    const std::size_t bit = (t >> (trace_shift.size() - 1 - i)) & 1;
                    fr |= bit << trace_shift[i];
                    fc |= bit << trace_shift[i];
                }
                out(r, c) += rho(fr, fc);
            }
    return out;
}

ComplexMatrix apply_channel(const std::vector<ComplexMatrix>& kraus, const ComplexMatrix& rho) {
    const std::size_t dout = kraus.front().rows();
    ComplexMatrix acc(dout, dout);
    for (const auto& k : kraus) acc += ref::matmul(ref::matmul(k, rho), k.dagger());
    return acc;
}

}  // namespace qsim::ref
