#ifndef SUBGAUSS_NORMS_HPP
#define SUBGAUSS_NORMS_HPP

#include "subgauss/distribution.hpp"

namespace subgauss {

/// A computed norm value together with its certified bracket.
struct NormResult {
  double value = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double tol = 0.0;
  long evaluations = 0;
};

struct RatioResult {
  NormResult sigma;
  NormResult psi2;
  double ratio = 0.0;
};

inline constexpr double kDefaultPsi2Tol = 1e-10;
inline constexpr double kDefaultProxyTol = 1e-8;

/// Sub-Gaussian norm inf{K > 0 : E e^{X^2/K^2} <= 2}, bracketed by bisection
/// to width <= tol. The point mass at 0 yields exactly 0. For nondegenerate
/// laws the returned bracket satisfies psi2_moment(d, bracket_hi) <= 2 <
/// psi2_moment(d, bracket_lo). Throws NonPositiveTol.
NormResult psi2_norm(const Distribution& d, double tol = kDefaultPsi2Tol);

/// Sub-Gaussian parameter: the smallest sigma with
/// E e^{s(X - EX)} <= e^{sigma^2 s^2/2} for all s, computed as
/// sqrt(sup_{s != 0} 2 log M_c(s)/s^2) together with the s->0 limit Var(X).
/// StandardGaussian and CenteredBinaryShape dispatch to closed forms;
/// everything else runs the grid + golden-section supremum search.
/// Throws NonPositiveTol / UnsupportedLaw.
NormResult variance_proxy(const Distribution& d, double tol = kDefaultProxyTol);

/// Closed-form sub-Gaussian parameter of the centered two-point law:
/// sigma = |x1| sqrt((u^2-1)/(2 log u)) for u != 1 and |x1| for u = 1, with a
/// series switch near the removable singularity. Throws UOutOfRange.
double variance_proxy_binary(double u, double x1);

/// sigma / psi2-norm of the centered version of d. Throws DegenerateLaw for
/// laws with zero variance.
RatioResult ratio(const Distribution& d, double psi2_tol = kDefaultPsi2Tol,
                  double proxy_tol = kDefaultProxyTol);

}  // namespace subgauss

#endif
