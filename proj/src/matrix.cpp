#include "qsim/matrix.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qsim {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows_ * cols_)
        throw std::invalid_argument("ComplexMatrix: entry count does not match rows*cols");
    if (!all_finite())
        throw std::invalid_argument("ComplexMatrix: entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::zero(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::dagger() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
}

cplx ComplexMatrix::trace() const {
    if (rows_ != cols_) throw std::invalid_argument("trace: matrix not square");
    cplx t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const cplx& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx& v : a_) m = std::max(m, std::abs(v));
    return m;
}

bool ComplexMatrix::all_finite() const {
    for (const cplx& v : a_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    if (rows_ != cols_) return false;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = r; c < cols_; ++c)
            if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
    return true;
}

bool ComplexMatrix::approx_equal(const ComplexMatrix& other, double tol) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) return false;
    for (std::size_t i = 0; i < a_.size(); ++i)
        if (std::abs(a_[i] - other.a_[i]) > tol) return false;
    return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("matrix add: shape mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += other.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("matrix sub: shape mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= other.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (cplx& v : a_) v *= s;
    return *this;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner dimension mismatch");
    const std::size_t m = a.rows(), n = b.cols(), k = a.cols();
    ComplexMatrix c(m, n);
    const cplx* pa = a.data().data();
    const cplx* pb = b.data().data();
    cplx* pc = c.data().data();
#pragma omp parallel for schedule(static) if (m * n * k > 32768)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
        for (std::size_t l = 0; l < k; ++l) {
            const double ar = pa[i * k + l].real();
            const double ai = pa[i * k + l].imag();
            if (ar == 0.0 && ai == 0.0) continue;
            // scalarized complex saxpy: lets the compiler vectorize the row
            // update, which std::complex operator overloads inhibit here
            const double* __restrict br = reinterpret_cast<const double*>(pb + l * n);
            double* __restrict cr = reinterpret_cast<double*>(pc + i * n);
            for (std::size_t j = 0; j < n; ++j) {
                cr[2 * j] += ar * br[2 * j] - ai * br[2 * j + 1];
                cr[2 * j + 1] += ar * br[2 * j + 1] + ai * br[2 * j];
            }
        }
    }
    return c;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
    ComplexMatrix c(ar * br, ac * bc);
#pragma omp parallel for collapse(2) schedule(static) if (ar * br * ac * bc > 65536)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(ar); ++i)
        for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(ac); ++j) {
            const cplx av = a(i, j);
            for (std::size_t p = 0; p < br; ++p)
                for (std::size_t q = 0; q < bc; ++q)
                    c(i * br + p, j * bc + q) = av * b(p, q);
        }
    return c;
}

ComplexMatrix kron_power(const ComplexMatrix& a, std::size_t k) {
    ComplexMatrix r = ComplexMatrix::identity(1);
    for (std::size_t i = 0; i < k; ++i) r = kron(r, a);
    return r;
}

}  // namespace qsim
