#include "qsim/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qsim {

namespace {

double offdiag_norm(const ComplexMatrix& a) {
    const std::size_t n = a.rows();
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (r != c) s += std::norm(a(r, c));
    return std::sqrt(s);
}

// Right-multiply columns (p,q) of a by the 2x2 unitary u.
void apply_right(ComplexMatrix& a, std::size_t p, std::size_t q, const cplx u[2][2]) {
    const std::size_t n = a.rows();
#pragma omp parallel for schedule(static) if (n >= 128)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n); ++k) {
        const cplx vp = a(k, p), vq = a(k, q);
        a(k, p) = vp * u[0][0] + vq * u[1][0];
        a(k, q) = vp * u[0][1] + vq * u[1][1];
    }
}

// Left-multiply rows (p,q) of a by u^dagger.
void apply_left(ComplexMatrix& a, std::size_t p, std::size_t q, const cplx u[2][2]) {
    const std::size_t n = a.cols();
#pragma omp parallel for schedule(static) if (n >= 128)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n); ++k) {
        const cplx vp = a(p, k), vq = a(q, k);
        a(p, k) = std::conj(u[0][0]) * vp + std::conj(u[1][0]) * vq;
        a(q, k) = std::conj(u[0][1]) * vp + std::conj(u[1][1]) * vq;
    }
}

}  // namespace

EigResult hermitian_eig(const ComplexMatrix& m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("hermitian_eig: matrix not square");
    if (n > 1024) throw std::invalid_argument("hermitian_eig: dimension exceeds 1024 cap");
    const double scale = std::max(1.0, m.max_abs());
    if (!m.is_hermitian(1e-9 * scale))
        throw std::invalid_argument("hermitian_eig: matrix not Hermitian");

    ComplexMatrix a = m;
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double stop = 1e-10;
    for (int sweep = 0; sweep < 100; ++sweep) {
        if (offdiag_norm(a) < stop) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx g = a(p, q);
                const double absg = std::abs(g);
                if (absg < 1e-300) continue;
                const double alpha = a(p, p).real();
                const double beta = a(q, q).real();
                const double d = 0.5 * (alpha - beta);
                const double rad = std::hypot(d, absg);
                const double lo = 0.5 * (alpha + beta) - rad;
                const double hi = 0.5 * (alpha + beta) + rad;
                // Eigenvector of [[alpha, g],[conj(g), beta]] for the larger
                // eigenvalue; take the numerically stabler residual row.
                cplx v0, v1;
                if (std::abs(hi - alpha) > std::abs(hi - beta)) {
                    v0 = g;
                    v1 = cplx(hi - alpha, 0.0);
                } else {
                    v0 = cplx(hi - beta, 0.0);
                    v1 = std::conj(g);
                }
                const double nv = std::sqrt(std::norm(v0) + std::norm(v1));
                if (nv < 1e-300) continue;
                v0 /= nv;
                v1 /= nv;
                // Columns: [orthogonal partner (lo), eigenvector (hi)].
                cplx u[2][2] = {{-std::conj(v1), v0}, {std::conj(v0), v1}};
                (void)lo;
                apply_right(a, p, q, u);
                apply_left(a, p, q, u);
                apply_right(v, p, q, u);
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&a](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigResult res;
    res.values.resize(n);
    res.vectors = ComplexMatrix(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        res.values[c] = a(order[c], order[c]).real();
        for (std::size_t r = 0; r < n; ++r) res.vectors(r, c) = v(r, order[c]);
    }
    return res;
}

ComplexMatrix hermitian_sqrt(const ComplexMatrix& m) {
    EigResult e = hermitian_eig(m);
    const std::size_t n = m.rows();
    ComplexMatrix s(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        const double lam = std::max(0.0, e.values[c]);
        const double root = std::sqrt(lam);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t r2 = 0; r2 < n; ++r2)
                s(r, r2) += root * e.vectors(r, c) * std::conj(e.vectors(r2, c));
    }
    return s;
}

bool is_psd_within(const ComplexMatrix& m, double tol) {
    const std::size_t n = m.rows();
    if (n != m.cols()) return false;
    ComplexMatrix a = m;
    for (std::size_t i = 0; i < n; ++i) a(i, i) += tol;
    // In-place semidefinite Cholesky with zero-pivot handling.
    const double scale = std::max(1.0, m.max_abs());
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j).real();
        for (std::size_t k = 0; k < j; ++k) d -= std::norm(a(j, k));
        if (d < -1e-11 * scale) return false;
        if (d <= 1e-14 * scale) {
            // Zero pivot: the rest of the column must vanish too.
            for (std::size_t i = j + 1; i < n; ++i) {
                cplx s = a(i, j);
                for (std::size_t k = 0; k < j; ++k) s -= a(i, k) * std::conj(a(j, k));
                if (std::abs(s) > 1e-6 * scale) return false;
            }
            for (std::size_t i = j; i < n; ++i) a(i, j) = 0.0;
            continue;
        }
        const double root = std::sqrt(d);
        a(j, j) = root;
        for (std::size_t i = j + 1; i < n; ++i) {
            cplx s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= a(i, k) * std::conj(a(j, k));
            a(i, j) = s / root;
        }
    }
    return true;
}

}  // namespace qsim
