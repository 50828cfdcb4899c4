#pragma once

#include "qsim/qre.hpp"

namespace qsim::nocloning {

/// rho -> sum_z <z|rho|z> (|z><z|)^{tensor k}: dephase, then copy the label.
Channel basis_copier(std::size_t k, std::size_t n);

/// The cloner W = Dec^{tensor k} o V o Sim built from a classical-encoding
/// scheme. Warns on stderr if the scheme is not classical.
Channel build_cloner(const qre::QreScheme& scheme, std::size_t k);

struct ClonerReport {
    std::size_t k = 0;
    qre::SchemeParams params;
    std::vector<double> a_grid;
    std::vector<double> lhs;         // per family member: (1/2)||W(psi_i) - psi_i^k||_1
    std::vector<double> fidelities;  // <psi^k| W(psi_i) |psi^k>
    double rhs_statistical(double a) const;    // eps + k*delta/a + k*sqrt(a)
    double rhs_computational(double a) const;  // sqrt of the statistical bound
    double worst_margin = 0.0;                 // min over (i, a) of rhs - lhs
    bool pass = false;
};

/// Default grid {1e-4, 1e-3, 1e-2, 0.1, 0.25, sqrt(delta_hat), 1}.
std::vector<double> default_a_grid(double delta_hat);

ClonerReport verify_clone_bound(const qre::QreScheme& scheme, std::size_t k,
                                const std::vector<double>& a_grid);

/// Checks td(|+>^2, |0>^2) - td(|+>, |0>) <= 2*sqrt(eps + 2*sqrt(delta) +
/// 2*delta^{1/4}) with both distances measured, not assumed. Requires the
/// family to reach |0> and |+> through the target channel.
bool chain_inequality_check(const qre::QreScheme& scheme);

/// Mass of the poorly-decoded label set G = {z : 1 - <psi|Dec(|z><z|)|psi> >= a}
/// under p_z = <z|F^(rho_i)|z>; throws if it exceeds delta_hat/a + 1e-8.
double gap_set_mass(const qre::QreScheme& scheme, std::size_t family_index, double a);

bool fidelity_lower_bound_check(const qre::QreScheme& scheme, std::size_t k, double a);

}  // namespace qsim::nocloning
