#include "subgauss/norms.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace subgauss {

namespace {

constexpr double kGolden = 0.6180339887498949;  // (sqrt(5)-1)/2
constexpr double kProxyGridLo = 1e-6;           // inner endpoint of the log-spaced s grid
constexpr int kProxyGridSide = 512;

NormResult exact_result(double v, double tol) { return NormResult{v, v, v, tol, 0}; }

NormResult bisect_psi2(const Distribution& d, double lo, double hi, double tol, long evals) {
  // invariant: moment(hi) <= 2 < moment(lo)
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    ++evals;
    if (psi2_moment(d, mid) <= 2.0)
      hi = mid;
    else
      lo = mid;
  }
  return NormResult{0.5 * (lo + hi), lo, hi, tol, evals};
}

/// 2 log M_c(s) / s^2 evaluated on the centered atoms.
double proxy_objective(const FiniteDistribution& f, double s) {
  return 2.0 * log_mgf(f, s) / (s * s);
}

NormResult variance_proxy_numeric(const FiniteDistribution& raw, double tol) {
  const Distribution centered_d = centered(Distribution{raw});
  const FiniteDistribution& f = std::get<FiniteDistribution>(centered_d);
  const double var = variance(centered_d);
  if (var == 0.0) return exact_result(0.0, tol);

  const double xmax = max_abs_support(f);
  long evals = 0;
  auto g = [&](double s) {
    ++evals;
    return proxy_objective(f, s);
  };

  double s_max = 50.0 / xmax;
  double best = var;
  double best_s = 0.0;  // 0 marks "limit point"; any other value is a grid point
  double ratio_step = 1.0;
  for (int escalation = 0; escalation < 60; ++escalation) {
    ratio_step = std::pow(s_max / kProxyGridLo, 1.0 / (kProxyGridSide - 1));
    double s = kProxyGridLo;
    for (int i = 0; i < kProxyGridSide; ++i, s *= ratio_step) {
      for (double signed_s : {s, -s}) {
        const double v = g(signed_s);
        if (v > best) {
          best = v;
          best_s = signed_s;
        }
      }
    }
    // Beyond s_max the objective is bounded by 2*xmax/s, so once the
    // endpoint values have dropped below the incumbent nothing out there
    // can win.
    if (std::max(g(s_max), g(-s_max)) < best - tol) break;
    if (2.0 * xmax / s_max <= best) break;
    s_max *= 2.0;
  }

  if (best_s != 0.0) {
    // Golden-section refinement of the best grid cell.
    double a = best_s > 0 ? best_s / ratio_step : best_s * ratio_step;
    double b = best_s > 0 ? best_s * ratio_step : best_s / ratio_step;
    double c = b - kGolden * (b - a);
    double e = a + kGolden * (b - a);
    double fc = g(c), fe = g(e);
    for (int it = 0; it < 200 && (b - a) > 1e-12 * std::max(1.0, std::abs(b)); ++it) {
      if (fc > fe) {
        b = e;
        e = c;
        fe = fc;
        c = b - kGolden * (b - a);
        fc = g(c);
      } else {
        a = c;
        c = e;
        fc = fe;
        e = a + kGolden * (b - a);
        fe = g(e);
      }
    }
    best = std::max({best, fc, fe, var});
  }

  const double value = std::sqrt(best);
  return NormResult{value, value, value + tol, tol, evals};
}

}  // namespace

NormResult psi2_norm(const Distribution& d, double tol) {
  if (!(tol > 0.0)) throw NonPositiveTol("tol must be positive");
  long evals = 0;
  auto moment = [&](double K) {
    ++evals;
    return psi2_moment(d, K);
  };

  const auto finite = as_finite(d);
  const bool named = std::holds_alternative<NamedLaw>(d);
  if (finite && !named) {
    const double xmax = max_abs_support(*finite);
    if (xmax == 0.0) return exact_result(0.0, tol);  // infimum over all K > 0
    double lo = xmax / std::sqrt(700.0);
    const double hi = xmax / std::sqrt(std::numbers::ln2);  // always feasible
    while (moment(lo) <= 2.0) lo *= 0.5;
    return bisect_psi2(d, lo, hi, tol, evals);
  }

  // Named laws: grow/shrink a unit bracket by doubling.
  double lo = 1.0, hi = 1.0;
  if (moment(1.0) > 2.0) {
    do hi *= 2.0;
    while (moment(hi) > 2.0);
  } else {
    do lo *= 0.5;
    while (moment(lo) <= 2.0);
  }
  return bisect_psi2(d, lo, hi, tol, evals);
}

NormResult variance_proxy(const Distribution& d, double tol) {
  if (!(tol > 0.0)) throw NonPositiveTol("tol must be positive");
  if (const auto* n = std::get_if<NamedLaw>(&d)) {
    if (*n == NamedLaw::StandardGaussian) return exact_result(1.0, tol);
    return variance_proxy_numeric(*as_finite(d), tol);
  }
  if (const auto* b = std::get_if<CenteredBinaryShape>(&d))
    return exact_result(variance_proxy_binary(b->u, b->x1), tol);
  if (const auto* f = std::get_if<FiniteDistribution>(&d)) return variance_proxy_numeric(*f, tol);
  throw UnsupportedLaw("no variance proxy evaluator for this law");
}

double variance_proxy_binary(double u, double x1) {
  if (!(u >= 1.0)) throw UOutOfRange("u must be >= 1");
  const double e = u - 1.0;
  double factor;
  if (e < 1e-6) {
    factor = u * (1.0 + e * e / 6.0);  // (u^2-1)/(2 log u) to second order
  } else {
    factor = (u - 1.0) * (u + 1.0) / (2.0 * std::log(u));
  }
  return std::abs(x1) * std::sqrt(factor);
}

RatioResult ratio(const Distribution& d, double psi2_tol, double proxy_tol) {
  const Distribution c = centered(d);
  if (!(variance(c) > 0.0)) throw DegenerateLaw("ratio requires positive variance");
  RatioResult r;
  r.sigma = variance_proxy(c, proxy_tol);
  r.psi2 = psi2_norm(c, psi2_tol);
  r.ratio = r.sigma.value / r.psi2.value;
  return r;
}

}  // namespace subgauss
