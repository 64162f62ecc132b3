#pragma once

namespace lagcorr {

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
[[nodiscard]] double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
[[nodiscard]] double gamma_q(double a, double x);

/// Upper-tail probability of a chi-square variable with `dof` degrees of
/// freedom: Q(dof/2, chi2/2).
[[nodiscard]] double chi2_upper_tail(double chi2, int dof);

}  // namespace lagcorr
