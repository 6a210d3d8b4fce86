#ifndef SUBGAUSS_ORACLE_HPP
#define SUBGAUSS_ORACLE_HPP

#include <functional>

#include "subgauss/distribution.hpp"

namespace subgauss {
namespace oracle {

/// Truncated quadrature settings. The tail beyond [-R, R] is controlled by a
/// sub-Gaussian bound; tail_bound() records the 2 e^{-R^2/2}-style estimate.
struct QuadratureSpec {
  double half_width = 12.0;
  int panels = 4096;  // even, >= 2
  enum class Rule { Simpson } rule = Rule::Simpson;

  double tail_bound() const;
};

/// Composite Simpson rule on [a, b]; panels must be even and >= 2.
double simpson(const std::function<double(double)>& f, double a, double b, int panels);

/// Integral of e^{x^2/K^2} phi(x) over [-R, R] by composite Simpson. Only the
/// raw integral is computed here; the closed form it validates lives
/// elsewhere. Requires K > sqrt(2); throws KTooSmall.
double quad_gaussian_psi2(double K, const QuadratureSpec& spec);

/// Dense linear-grid lower bound on sigma^2: the maximum of
/// 2 log M_c(s)/s^2 over s = +-(k/n) s_max, k = 1..n, union Var(d).
double grid_sup_proxy(const Distribution& d, double s_max, long n);

/// Central finite difference of order 1, 2 or 3 with step h; error O(h^2).
double finite_diff(const std::function<double(double)>& f, double x, int order, double h);

}  // namespace oracle
}  // namespace subgauss

#endif
