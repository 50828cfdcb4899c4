#include "qsim/nocloning.hpp"

#include "qsim/eig.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qsim::nocloning {

namespace {

/// Dominant eigenvector of a channel output that should be pure.
PureState pure_output(const Channel& target, const DensityMatrix& rho) {
    const DensityMatrix out = target.apply(rho);
    const EigResult e = hermitian_eig(out.matrix());
    const std::size_t last = e.values.size() - 1;
    if (e.values[last] < 1.0 - 1e-9)
        throw std::invalid_argument("nocloning: target output is not pure on this family");
    std::vector<cplx> amps(out.dim());
    for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = e.vectors(i, last);
    return PureState::normalized(out.qubits(), std::move(amps));
}

PureState tensor_power_state(const PureState& psi, std::size_t k) {
    PureState out = psi;
    for (std::size_t i = 1; i < k; ++i) out = out.tensor(psi);
    return out;
}

}  // namespace

Channel basis_copier(std::size_t k, std::size_t n) {
    if (k * n > kMaxPureQubits) throw std::invalid_argument("basis_copier: cap exceeded");
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t odim = std::size_t{1} << (k * n);
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(dim);
    for (std::size_t z = 0; z < dim; ++z) {
        std::size_t rep = 0;
        for (std::size_t c = 0; c < k; ++c) rep = (rep << n) | z;
        ComplexMatrix op(odim, dim);
        op(rep, z) = 1.0;
        kraus.push_back(std::move(op));
    }
    return Channel(n, k * n, std::move(kraus));
}

Channel build_cloner(const qre::QreScheme& scheme, std::size_t k) {
    scheme.validate();
    if (!qre::measure_params(scheme).classical)
        std::fprintf(stderr, "warning: building basis copier over a non-classical encoding\n");
    const Channel v = basis_copier(k, scheme.encode.out_qubits());
    return scheme.decode.tensor_power(k).compose(v).compose(scheme.simulator);
}

double ClonerReport::rhs_statistical(double a) const {
    return params.eps_hat + static_cast<double>(k) * params.delta_hat / a +
           static_cast<double>(k) * std::sqrt(a);
}

double ClonerReport::rhs_computational(double a) const { return std::sqrt(rhs_statistical(a)); }

std::vector<double> default_a_grid(double delta_hat) {
    std::vector<double> grid{1e-4, 1e-3, 1e-2, 0.1, 0.25};
    if (delta_hat > 0.0) grid.push_back(std::sqrt(delta_hat));
    grid.push_back(1.0);
    return grid;
}

ClonerReport verify_clone_bound(const qre::QreScheme& scheme, std::size_t k,
                                const std::vector<double>& a_grid) {
    ClonerReport report;
    report.k = k;
    report.params = qre::measure_params(scheme);
    report.a_grid = a_grid;
    const Channel w = build_cloner(scheme, k);
    double worst = 1e300;
    for (const auto& rho : scheme.family) {
        const PureState psi = pure_output(scheme.target, rho);
        const PureState copies = tensor_power_state(psi, k);
        const DensityMatrix cloned = w.apply(scheme.target.apply(rho));
        const double lhs = trace_distance(cloned, copies.to_density());
        report.lhs.push_back(lhs);
        report.fidelities.push_back(fidelity(copies, cloned));
        for (double a : a_grid) worst = std::min(worst, report.rhs_statistical(a) - lhs);
    }
    report.worst_margin = worst;
    report.pass = worst > -1e-8;
    return report;
}

bool chain_inequality_check(const qre::QreScheme& scheme) {
    const qre::SchemeParams p = qre::measure_params(scheme);
    bool has_zero = false, has_plus = false;
    const DensityMatrix zero = PureState::basis(1, 0).to_density();
    const DensityMatrix plus = PureState::plus_states(1).to_density();
    for (const auto& rho : scheme.family) {
        if (scheme.target.out_qubits() != 1) break;
        const DensityMatrix out = scheme.target.apply(rho);
        ComplexMatrix d0 = out.matrix();
        d0 -= zero.matrix();
        ComplexMatrix dp = out.matrix();
        dp -= plus.matrix();
        if (d0.max_abs() < 1e-9) has_zero = true;
        if (dp.max_abs() < 1e-9) has_plus = true;
    }
    if (!has_zero || !has_plus)
        throw std::invalid_argument("chain_inequality_check: family must reach |0> and |+>");
    const PureState z1 = PureState::basis(1, 0), p1 = PureState::plus_states(1);
    const double lhs = trace_distance(p1.tensor(p1).to_density(), z1.tensor(z1).to_density()) -
                       trace_distance(p1.to_density(), z1.to_density());
    const double rhs = 2.0 * std::sqrt(p.eps_hat + 2.0 * std::sqrt(p.delta_hat) +
                                       2.0 * std::pow(p.delta_hat, 0.25));
    return lhs <= rhs + 1e-8;
}

double gap_set_mass(const qre::QreScheme& scheme, std::size_t family_index, double a) {
    const qre::SchemeParams p = qre::measure_params(scheme);
    if (!p.classical) throw std::invalid_argument("gap_set_mass: encoding is not classical");
    const DensityMatrix& rho = scheme.family.at(family_index);
    const PureState psi = pure_output(scheme.target, rho);
    const DensityMatrix fhat = scheme.encode.apply(rho);
    double mass = 0.0;
    for (std::size_t z = 0; z < fhat.dim(); ++z) {
        const double pz = fhat.matrix()(z, z).real();
        if (pz < 1e-15) continue;
        const DensityMatrix decoded =
            scheme.decode.apply(PureState::basis(fhat.qubits(), z).to_density());
        if (1.0 - fidelity(psi, decoded) >= a) mass += pz;
    }
    if (mass > p.delta_hat / a + 1e-8)
        throw std::runtime_error("gap_set_mass: Markov bound violated");
    return mass;
}

bool fidelity_lower_bound_check(const qre::QreScheme& scheme, std::size_t k, double a) {
    const ClonerReport report = verify_clone_bound(scheme, k, {a});
    const double bound = 1.0 - report.rhs_statistical(a);
    for (double f : report.fidelities)
        if (f < bound - 1e-8) return false;
    return true;
}

}  // namespace qsim::nocloning
