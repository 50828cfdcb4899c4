#pragma once

#include <cstddef>
#include <vector>

namespace qsim::stats {

/// Upper regularized incomplete gamma Q(a, x).
double gamma_q(double a, double x);

/// Chi-square survival function (p-value) for the given statistic and
/// degrees of freedom.
double chi_square_pvalue(double statistic, std::size_t dof);

/// Pearson chi-square uniformity test over equally likely bins.
double uniformity_pvalue(const std::vector<std::size_t>& counts);

}  // namespace qsim::stats
