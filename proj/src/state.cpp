#include "qsim/state.hpp"

#include "qsim/eig.hpp"

#include <cmath>

namespace qsim {

namespace {

void check_qubit_range(std::size_t n, const std::vector<int>& qubits) {
    for (int q : qubits)
        if (q < 1 || static_cast<std::size_t>(q) > n)
            throw std::out_of_range("qubit index out of range");
}

}  // namespace

ComplexMatrix embed(const ComplexMatrix& op, std::size_t n, const std::vector<int>& qubits) {
    check_qubit_range(n, qubits);
    const std::size_t k = qubits.size();
    const std::size_t opd = std::size_t{1} << k;
    if (op.rows() != opd || op.cols() != opd)
        throw std::invalid_argument("embed: operator dimension does not match qubit count");
    const std::size_t dim = std::size_t{1} << n;
    ComplexMatrix full(dim, dim);
    // Bit position (from LSB) of 1-based qubit q under big-endian order.
    auto shift = [n](int q) { return n - static_cast<std::size_t>(q); };
#pragma omp parallel for schedule(static) if (dim >= 256)
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(dim); ++r) {
        std::size_t opr = 0;
        for (std::size_t i = 0; i < k; ++i)
            opr = (opr << 1) | ((static_cast<std::size_t>(r) >> shift(qubits[i])) & 1);
        for (std::size_t opc = 0; opc < opd; ++opc) {
            const cplx v = op(opr, opc);
            if (v == cplx(0.0)) continue;
            // Column index: same spectator bits, operator bits replaced.
            std::size_t c = static_cast<std::size_t>(r);
            for (std::size_t i = 0; i < k; ++i) {
                const std::size_t s = shift(qubits[i]);
                c &= ~(std::size_t{1} << s);
                c |= ((opc >> (k - 1 - i)) & 1) << s;
            }
            full(r, c) = v;
        }
    }
    return full;
}

PureState::PureState(std::size_t qubits, std::vector<cplx> amplitudes)
    : n_(qubits), amps_(std::move(amplitudes)) {
    if (n_ > kMaxPureQubits) throw std::invalid_argument("PureState: qubit cap exceeded");
    if (amps_.size() != (std::size_t{1} << n_))
        throw std::invalid_argument("PureState: amplitude count mismatch");
    double norm2 = 0.0;
    for (const cplx& a : amps_) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > 1e-9)
        throw std::invalid_argument("PureState: squared norm deviates from 1");
}

PureState PureState::normalized(std::size_t qubits, std::vector<cplx> amplitudes) {
    double norm2 = 0.0;
    for (const cplx& a : amplitudes) norm2 += std::norm(a);
    if (norm2 < 1e-24) throw std::invalid_argument("PureState: zero vector");
    const double inv = 1.0 / std::sqrt(norm2);
    for (cplx& a : amplitudes) a *= inv;
    return PureState(qubits, std::move(amplitudes));
}

PureState PureState::basis(std::size_t qubits, std::size_t index) {
    std::vector<cplx> a(std::size_t{1} << qubits, 0.0);
    a.at(index) = 1.0;
    return PureState(qubits, std::move(a));
}

PureState PureState::plus_states(std::size_t qubits) {
    const std::size_t dim = std::size_t{1} << qubits;
    std::vector<cplx> a(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
    return PureState(qubits, std::move(a));
}

PureState PureState::tensor(const PureState& other) const {
    const std::size_t dim2 = other.dim();
    std::vector<cplx> out(dim() * dim2);
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim2; ++j) out[i * dim2 + j] = amps_[i] * other.amps_[j];
    return PureState(n_ + other.n_, std::move(out));
}

PureState PureState::apply(const ComplexMatrix& unitary) const {
    if (unitary.rows() != dim() || unitary.cols() != dim())
        throw std::invalid_argument("PureState::apply: dimension mismatch");
    std::vector<cplx> out(dim(), 0.0);
#pragma omp parallel for schedule(static) if (dim() >= 512)
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(dim()); ++r) {
        cplx s = 0.0;
        for (std::size_t c = 0; c < dim(); ++c) s += unitary(r, c) * amps_[c];
        out[r] = s;
    }
    return PureState(n_, std::move(out));
}

PureState PureState::apply_on(const ComplexMatrix& op, const std::vector<int>& qubits) const {
    return apply(embed(op, n_, qubits));
}

double PureState::branch_probability(int qubit, const cplx b0[2], const cplx b1[2],
                                     int outcome) const {
    check_qubit_range(n_, {qubit});
    const std::size_t s = n_ - static_cast<std::size_t>(qubit);
    const cplx* basis = outcome == 0 ? b0 : b1;
    double p = 0.0;
    for (std::size_t i = 0; i < dim(); ++i) {
        if ((i >> s) & 1) continue;
        const cplx a = std::conj(basis[0]) * amps_[i] + std::conj(basis[1]) * amps_[i | (std::size_t{1} << s)];
        p += std::norm(a);
    }
    return p;
}

PureState PureState::collapse_qubit(int qubit, const cplx b0[2], const cplx b1[2], int outcome,
                                    double* probability) const {
    check_qubit_range(n_, {qubit});
    const std::size_t s = n_ - static_cast<std::size_t>(qubit);
    const cplx* basis = outcome == 0 ? b0 : b1;
    const std::size_t outdim = dim() >> 1;
    std::vector<cplx> out(outdim);
    double p = 0.0;
    std::size_t w = 0;
    for (std::size_t i = 0; i < dim(); ++i) {
        if ((i >> s) & 1) continue;
        const cplx a = std::conj(basis[0]) * amps_[i] + std::conj(basis[1]) * amps_[i | (std::size_t{1} << s)];
        p += std::norm(a);
        out[w++] = a;
    }
    if (probability) *probability = p;
    if (p < 1e-12) throw std::runtime_error("collapse_qubit: zero-probability branch");
    const double inv = 1.0 / std::sqrt(p);
    for (cplx& a : out) a *= inv;
    return PureState(n_ - 1, std::move(out));
}

DensityMatrix PureState::to_density() const {
    if (n_ > kMaxDensityQubits)
        throw std::invalid_argument("to_density: density-matrix qubit cap exceeded");
    ComplexMatrix m(dim(), dim());
    for (std::size_t r = 0; r < dim(); ++r)
        for (std::size_t c = 0; c < dim(); ++c) m(r, c) = amps_[r] * std::conj(amps_[c]);
    return DensityMatrix::unchecked(n_, std::move(m));
}

cplx inner(const PureState& a, const PureState& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a.amp(i)) * b.amp(i);
    return s;
}

double fidelity(const PureState& a, const PureState& b) {
    return std::norm(inner(a, b));
}

DensityMatrix::DensityMatrix(std::size_t qubits, ComplexMatrix matrix)
    : n_(qubits), mat_(std::move(matrix)) {
    validate();
}

DensityMatrix DensityMatrix::unchecked(std::size_t qubits, ComplexMatrix matrix) {
    DensityMatrix d;
    d.n_ = qubits;
    d.mat_ = std::move(matrix);
    return d;
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t qubits) {
    const std::size_t dim = std::size_t{1} << qubits;
    ComplexMatrix m = ComplexMatrix::identity(dim);
    m *= cplx(1.0 / static_cast<double>(dim));
    return unchecked(qubits, std::move(m));
}

void DensityMatrix::validate() const {
    if (n_ > kMaxDensityQubits) throw std::invalid_argument("DensityMatrix: qubit cap exceeded");
    const std::size_t dim = std::size_t{1} << n_;
    if (mat_.rows() != dim || mat_.cols() != dim)
        throw std::invalid_argument("DensityMatrix: dimension mismatch");
    if (!mat_.is_hermitian(1e-9)) throw std::invalid_argument("DensityMatrix: not Hermitian");
    if (std::abs(mat_.trace() - cplx(1.0)) > 1e-9)
        throw std::invalid_argument("DensityMatrix: trace deviates from 1");
    if (!is_psd_within(mat_, 1e-8))
        throw std::invalid_argument("DensityMatrix: not positive semidefinite");
}

DensityMatrix DensityMatrix::tensor(const DensityMatrix& other) const {
    return unchecked(n_ + other.n_, kron(mat_, other.mat_));
}

DensityMatrix DensityMatrix::conjugate(const ComplexMatrix& unitary) const {
    return unchecked(n_, matmul(matmul(unitary, mat_), unitary.dagger()));
}

DensityMatrix DensityMatrix::conjugate_on(const ComplexMatrix& op,
                                          const std::vector<int>& qubits) const {
    return conjugate(embed(op, n_, qubits));
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw std::invalid_argument("trace_distance: dimension mismatch");
    ComplexMatrix diff = rho.matrix();
    diff -= sigma.matrix();
    EigResult e = hermitian_eig(diff);
    double s = 0.0;
    for (double v : e.values) s += std::abs(v);
    return 0.5 * s;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    const std::size_t n = rho.qubits();
    check_qubit_range(n, keep);
    const std::size_t k = keep.size();
    const std::size_t outdim = std::size_t{1} << k;
    const std::size_t tdim = std::size_t{1} << (n - k);
    std::vector<bool> kept(n + 1, false);
    for (int q : keep) kept[static_cast<std::size_t>(q)] = true;
    // Bit shifts in the full index for kept (in `keep` order) and traced qubits.
    std::vector<std::size_t> keep_shift, trace_shift;
    for (int q : keep) keep_shift.push_back(n - static_cast<std::size_t>(q));
    for (std::size_t q = 1; q <= n; ++q)
        if (!kept[q]) trace_shift.push_back(n - q);

    auto full_index = [&](std::size_t kept_bits, std::size_t traced_bits) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < k; ++i)
            idx |= ((kept_bits >> (k - 1 - i)) & 1) << keep_shift[i];
        for (std::size_t i = 0; i < trace_shift.size(); ++i)
            idx |= ((traced_bits >> (trace_shift.size() - 1 - i)) & 1) << trace_shift[i];
        return idx;
    };

    ComplexMatrix out(outdim, outdim);
    for (std::size_t r = 0; r < outdim; ++r)
        for (std::size_t c = 0; c < outdim; ++c) {
            cplx s = 0.0;
            for (std::size_t t = 0; t < tdim; ++t)
                s += rho.matrix()(full_index(r, t), full_index(c, t));
            out(r, c) = s;
        }
    return DensityMatrix::unchecked(k, std::move(out));
}

double fidelity(const PureState& psi, const DensityMatrix& rho) {
    if (psi.dim() != rho.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
    cplx s = 0.0;
    for (std::size_t r = 0; r < psi.dim(); ++r)
        for (std::size_t c = 0; c < psi.dim(); ++c)
            s += std::conj(psi.amp(r)) * rho.matrix()(r, c) * psi.amp(c);
    return s.real();
}

double expectation(const ComplexMatrix& op, const PureState& psi) {
    cplx s = 0.0;
    for (std::size_t r = 0; r < psi.dim(); ++r)
        for (std::size_t c = 0; c < psi.dim(); ++c)
            s += std::conj(psi.amp(r)) * op(r, c) * psi.amp(c);
    return s.real();
}

double expectation(const ComplexMatrix& op, const DensityMatrix& rho) {
    return matmul(op, rho.matrix()).trace().real();
}

}  // namespace qsim
