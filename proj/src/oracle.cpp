#include "subgauss/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace subgauss {
namespace oracle {

double QuadratureSpec::tail_bound() const { return 2.0 * std::exp(-half_width * half_width / 2.0); }

double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  if (panels < 2 || panels % 2 != 0)
    throw std::invalid_argument("Simpson rule needs an even panel count >= 2");
  const double h = (b - a) / panels;
  double acc = f(a) + f(b);
  for (int i = 1; i < panels; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
  return acc * h / 3.0;
}

double quad_gaussian_psi2(double K, const QuadratureSpec& spec) {
  if (!(K > std::numbers::sqrt2)) throw KTooSmall("requires K > sqrt(2)");
  const double inv_norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  auto integrand = [&](double x) {
    return inv_norm * std::exp(x * x / (K * K) - 0.5 * x * x);
  };
  return simpson(integrand, -spec.half_width, spec.half_width, spec.panels);
}

double grid_sup_proxy(const Distribution& d, double s_max, long n) {
  if (n < 3 || !(s_max > 0.0)) throw std::invalid_argument("need n >= 3 and s_max > 0");
  const Distribution c = centered(d);
  double best = variance(c);
  for (long k = 1; k <= n; ++k) {
    const double s = s_max * static_cast<double>(k) / static_cast<double>(n);
    for (double signed_s : {s, -s}) {
      const double v = 2.0 * log_mgf(c, signed_s) / (signed_s * signed_s);
      if (v > best) best = v;
    }
  }
  return best;
}

double finite_diff(const std::function<double(double)>& f, double x, int order, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("step h must be positive");
  switch (order) {
    case 1:
      return (f(x + h) - f(x - h)) / (2.0 * h);
    case 2:
      return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
    case 3:
      return (f(x + 2.0 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2.0 * h)) /
             (2.0 * h * h * h);
    default:
      throw std::invalid_argument("order must be 1, 2 or 3");
  }
}

}  // namespace oracle
}  // namespace subgauss
