#include "qsim/channel.hpp"

#include "qsim/eig.hpp"
#include "qsim/gates.hpp"
#include "qsim/rng.hpp"

#include <cmath>

namespace qsim {

Channel::Channel(std::size_t in_qubits, std::size_t out_qubits, std::vector<ComplexMatrix> kraus)
    : in_(in_qubits), out_(out_qubits), kraus_(std::move(kraus)) {
    if (kraus_.empty()) throw std::invalid_argument("Channel: empty Kraus list");
    const std::size_t din = std::size_t{1} << in_;
    const std::size_t dout = std::size_t{1} << out_;
    for (const auto& k : kraus_)
        if (k.rows() != dout || k.cols() != din)
            throw std::invalid_argument("Channel: Kraus dimension mismatch");
    if (completeness_defect() > 1e-8)
        throw std::invalid_argument("Channel: Kraus completeness violated");
}

double Channel::completeness_defect() const {
    const std::size_t din = std::size_t{1} << in_;
    ComplexMatrix s(din, din);
    for (const auto& k : kraus_) s += matmul(k.dagger(), k);
    s -= ComplexMatrix::identity(din);
    return s.max_abs();
}

Channel Channel::identity(std::size_t qubits) {
    return Channel(qubits, qubits, {ComplexMatrix::identity(std::size_t{1} << qubits)});
}

Channel Channel::unitary(std::size_t qubits, const ComplexMatrix& u) {
    return Channel(qubits, qubits, {u});
}

Channel Channel::depolarizing(std::size_t qubits, double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarizing: p out of range");
    const std::size_t dim = std::size_t{1} << qubits;
    std::vector<ComplexMatrix> kraus;
    ComplexMatrix keep = ComplexMatrix::identity(dim);
    keep *= cplx(std::sqrt(1.0 - p));
    kraus.push_back(keep);
    if (p > 0.0) {
        // Uniform Pauli twirl over all X^x Z^z strings realizes rho -> I/2^n.
        const double w = std::sqrt(p / static_cast<double>(dim * dim));
        for (std::size_t xz = 0; xz < dim * dim; ++xz) {
            ComplexMatrix op = ComplexMatrix::identity(1);
            for (std::size_t q = 0; q < qubits; ++q) {
                const int x = (xz >> (2 * q)) & 1;
                const int z = (xz >> (2 * q + 1)) & 1;
                op = kron(op, gates::pauli_xz(x, z));
            }
            op *= cplx(w);
            kraus.push_back(op);
        }
    }
    return Channel(qubits, qubits, std::move(kraus));
}

Channel Channel::dephasing(std::size_t qubits) {
    const std::size_t dim = std::size_t{1} << qubits;
    std::vector<ComplexMatrix> kraus;
    for (std::size_t z = 0; z < dim; ++z) {
        ComplexMatrix k(dim, dim);
        k(z, z) = 1.0;
        kraus.push_back(std::move(k));
    }
    return Channel(qubits, qubits, std::move(kraus));
}

Channel Channel::partial_trace_channel(std::size_t qubits, const std::vector<int>& keep) {
    const std::size_t k = keep.size();
    std::vector<bool> kept(qubits + 1, false);
    for (int q : keep) {
        if (q < 1 || static_cast<std::size_t>(q) > qubits)
            throw std::out_of_range("partial_trace_channel: index out of range");
        kept[static_cast<std::size_t>(q)] = true;
    }
    std::vector<std::size_t> keep_shift, trace_shift;
    for (int q : keep) keep_shift.push_back(qubits - static_cast<std::size_t>(q));
    for (std::size_t q = 1; q <= qubits; ++q)
        if (!kept[q]) trace_shift.push_back(qubits - q);

    const std::size_t din = std::size_t{1} << qubits;
    const std::size_t dout = std::size_t{1} << k;
    const std::size_t tdim = std::size_t{1} << (qubits - k);
    std::vector<ComplexMatrix> kraus;
    for (std::size_t t = 0; t < tdim; ++t) {
        ComplexMatrix op(dout, din);
        for (std::size_t r = 0; r < dout; ++r) {
            std::size_t c = 0;
            for (std::size_t i = 0; i < k; ++i)
                c |= ((r >> (k - 1 - i)) & 1) << keep_shift[i];
            for (std::size_t i = 0; i < trace_shift.size(); ++i)
                c |= ((t >> (trace_shift.size() - 1 - i)) & 1) << trace_shift[i];
            op(r, c) = 1.0;
        }
        kraus.push_back(std::move(op));
    }
    return Channel(qubits, k, std::move(kraus));
}

Channel Channel::append_state(std::size_t qubits, const DensityMatrix& eta) {
    EigResult e = hermitian_eig(eta.matrix());
    const std::size_t din = std::size_t{1} << qubits;
    const std::size_t ed = eta.dim();
    std::vector<ComplexMatrix> kraus;
    for (std::size_t c = 0; c < ed; ++c) {
        if (e.values[c] < 1e-14) continue;
        const double w = std::sqrt(e.values[c]);
        ComplexMatrix vec(ed, 1);
        for (std::size_t r = 0; r < ed; ++r) vec(r, 0) = w * e.vectors(r, c);
        kraus.push_back(kron(ComplexMatrix::identity(din), vec));
    }
    return Channel(qubits, qubits + eta.qubits(), std::move(kraus));
}

Channel Channel::mixture(const std::vector<std::pair<double, Channel>>& parts) {
    if (parts.empty()) throw std::invalid_argument("mixture: empty");
    std::vector<ComplexMatrix> kraus;
    double total = 0.0;
    for (const auto& [w, ch] : parts) {
        total += w;
        if (ch.in_qubits() != parts.front().second.in_qubits() ||
            ch.out_qubits() != parts.front().second.out_qubits())
            throw std::invalid_argument("mixture: channel dimension mismatch");
        for (ComplexMatrix k : ch.kraus()) {
            k *= cplx(std::sqrt(w));
            kraus.push_back(std::move(k));
        }
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("mixture: weights must sum to 1");
    return Channel(parts.front().second.in_qubits(), parts.front().second.out_qubits(),
                   std::move(kraus));
}

DensityMatrix Channel::apply(const DensityMatrix& rho) const {
    if (rho.qubits() != in_) throw std::invalid_argument("Channel::apply: dimension mismatch");
    const std::size_t dout = std::size_t{1} << out_;
    ComplexMatrix acc(dout, dout);
#ifdef _OPENMP
#pragma omp parallel if (kraus_.size() >= 8 && dout >= 16)
    {
        ComplexMatrix local(dout, dout);
#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(kraus_.size()); ++i) {
            const auto& k = kraus_[i];
            local += matmul(matmul(k, rho.matrix()), k.dagger());
        }
#pragma omp critical
        acc += local;
    }
#else
    for (const auto& k : kraus_) acc += matmul(matmul(k, rho.matrix()), k.dagger());
#endif
    return DensityMatrix::unchecked(out_, std::move(acc));
}

Channel Channel::compose(const Channel& other) const {
    if (other.out_qubits() != in_)
        throw std::invalid_argument("Channel::compose: dimension mismatch");
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(kraus_.size() * other.kraus_.size());
    for (const auto& a : kraus_)
        for (const auto& b : other.kraus_) kraus.push_back(matmul(a, b));
    return Channel(other.in_, out_, std::move(kraus));
}

Channel Channel::tensor(const Channel& other) const {
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(kraus_.size() * other.kraus_.size());
    for (const auto& a : kraus_)
        for (const auto& b : other.kraus_) kraus.push_back(kron(a, b));
    return Channel(in_ + other.in_, out_ + other.out_, std::move(kraus));
}

Channel Channel::tensor_power(std::size_t k) const {
    if (k == 0) return Channel(0, 0, {ComplexMatrix::identity(1)});
    Channel r = *this;
    for (std::size_t i = 1; i < k; ++i) r = r.tensor(*this);
    return r;
}

Povm::Povm(std::vector<PovmEffect> effects) : effects_(std::move(effects)) {
    if (effects_.empty()) throw std::invalid_argument("Povm: empty effect list");
    const std::size_t d = effects_.front().op.rows();
    ComplexMatrix sum(d, d);
    for (const auto& e : effects_) {
        if (e.op.rows() != d || e.op.cols() != d)
            throw std::invalid_argument("Povm: effect dimension mismatch");
        if (!e.op.is_hermitian(1e-8) || !is_psd_within(e.op, 1e-8))
            throw std::invalid_argument("Povm: effect not PSD");
        sum += e.op;
    }
    sum -= ComplexMatrix::identity(d);
    if (sum.max_abs() > 1e-8) throw std::invalid_argument("Povm: effects do not sum to identity");
}

Povm Povm::computational(std::size_t qubits) {
    const std::size_t dim = std::size_t{1} << qubits;
    std::vector<PovmEffect> effects;
    for (std::size_t z = 0; z < dim; ++z) {
        ComplexMatrix e(dim, dim);
        e(z, z) = 1.0;
        effects.push_back({z, std::move(e)});
    }
    return Povm(std::move(effects));
}

std::size_t Povm::dim() const {
    return effects_.front().op.rows();
}

std::vector<double> Povm::distribution(const DensityMatrix& rho) const {
    if (rho.dim() != dim()) throw std::invalid_argument("Povm: state dimension mismatch");
    std::vector<double> p(effects_.size());
    for (std::size_t i = 0; i < effects_.size(); ++i)
        p[i] = std::max(0.0, expectation(effects_[i].op, rho));
    return p;
}

Povm::Outcome Povm::measure(const DensityMatrix& rho, Rng& rng) const {
    std::vector<double> p = distribution(rho);
    double total = 0.0;
    for (double& v : p) {
        if (v < 1e-12) v = 0.0;  // degenerate outcomes are never sampled
        total += v;
    }
    if (total < 1e-12) throw std::runtime_error("Povm::measure: numerically invalid state");
    const std::size_t idx = rng.sample(p);
    const ComplexMatrix root = hermitian_sqrt(effects_[idx].op);
    ComplexMatrix post = matmul(matmul(root, rho.matrix()), root);
    // Renormalize by the exact trace to absorb sqrt rounding.
    post *= cplx(1.0 / post.trace().real());
    return {effects_[idx].label, p[idx], DensityMatrix::unchecked(rho.qubits(), std::move(post))};
}

}  // namespace qsim
