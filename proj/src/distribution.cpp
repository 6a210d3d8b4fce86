#include "subgauss/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <numeric>

#include "json.hpp"

namespace subgauss {

namespace {

constexpr double kMergeTol = 1e-12;     // absolute atom-merge tolerance
constexpr double kMassSumTol = 1e-9;    // accepted slack in input mass sums
constexpr double kExpArgLimit = 700.0;  // beyond this, e^x is treated as +inf

double inf() { return std::numeric_limits<double>::infinity(); }

FiniteDistribution binary_atoms(const CenteredBinaryShape& b) {
  const double p = b.u / (1.0 + b.u);
  const double q = 1.0 / (1.0 + b.u);
  const double x2 = -b.u * b.x1;
  FiniteDistribution f;
  if (b.x1 < x2) {
    f.points = {b.x1, x2};
    f.masses = {p, q};
  } else {
    f.points = {x2, b.x1};
    f.masses = {q, p};
  }
  return f;
}

FiniteDistribution rademacher_atoms() { return FiniteDistribution{{-1.0, 1.0}, {0.5, 0.5}}; }

double finite_log_mgf(const FiniteDistribution& f, double s) {
  const std::size_t n = f.points.size();
  double zmax = 0.0;
  for (double x : f.points) zmax = std::max(zmax, std::abs(s * x));
  if (zmax < 0.5) {
    // Small-s path: sum p_i*(e^{s x_i} - 1) term by term so that the O(s)
    // parts of a centered law cancel without losing the O(s^2) remainder.
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) d += f.masses[i] * std::expm1(s * f.points[i]);
    return std::log1p(d);
  }
  // log-sum-exp over a_i = s x_i + log p_i
  double stack[16];
  std::vector<double> heap;
  double* a = stack;
  if (n > 16) {
    heap.resize(n);
    a = heap.data();
  }
  double m = -inf();
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = s * f.points[i] + std::log(f.masses[i]);
    m = std::max(m, a[i]);
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::exp(a[i] - m);
  return m + std::log(acc);
}

double finite_psi2_moment(const FiniteDistribution& f, double K) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.points.size(); ++i) {
    const double r = f.points[i] / K;
    const double a = r * r;
    if (a > kExpArgLimit) return inf();
    acc += f.masses[i] * std::exp(a);
  }
  return acc;
}

}  // namespace

Distribution make_finite(std::span<const double> points, std::span<const double> masses) {
  if (points.size() != masses.size() || points.empty())
    throw LengthMismatch("points and masses must have equal, nonzero length");
  for (double m : masses)
    if (!(m > 0.0)) throw NonPositiveMass("all masses must be strictly positive");
  const double total = std::accumulate(masses.begin(), masses.end(), 0.0);
  if (std::abs(total - 1.0) > kMassSumTol)
    throw MassSumOutOfTolerance("masses sum to " + std::to_string(total) +
                                ", expected 1 within 1e-9");

  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });

  FiniteDistribution f;
  for (std::size_t k : order) {
    if (!f.points.empty() && points[k] - f.points.back() <= kMergeTol) {
      f.masses.back() += masses[k];
    } else {
      f.points.push_back(points[k]);
      f.masses.push_back(masses[k]);
    }
  }

  for (double& m : f.masses) m /= total;
  // Force the exact-sum invariant by absorbing the rounding residue into the
  // largest mass.
  const double sum = std::accumulate(f.masses.begin(), f.masses.end(), 0.0);
  auto largest = std::max_element(f.masses.begin(), f.masses.end());
  *largest += 1.0 - sum;
  return f;
}

Distribution make_centered_binary(double u, double x1) {
  if (!(u >= 1.0)) throw UOutOfRange("u must be >= 1");
  if (x1 == 0.0) throw ZeroX1("x1 must be nonzero");
  return CenteredBinaryShape{u, x1};
}

double log_mgf(const Distribution& d, double s) {
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FiniteDistribution>) {
          return finite_log_mgf(v, s);
        } else if constexpr (std::is_same_v<T, NamedLaw>) {
          if (v == NamedLaw::StandardGaussian) return 0.5 * s * s;
          const double a = std::abs(s);  // log cosh(s), overflow-free
          return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
        } else {
          return finite_log_mgf(binary_atoms(v), s);
        }
      },
      d);
}

double log_mgf(const FiniteDistribution& f, double s) { return finite_log_mgf(f, s); }

double mgf(const Distribution& d, double s) {
  if (const auto* n = std::get_if<NamedLaw>(&d)) {
    return *n == NamedLaw::StandardGaussian ? std::exp(0.5 * s * s) : std::cosh(s);
  }
  return std::exp(log_mgf(d, s));
}

double psi2_moment(const Distribution& d, double K) {
  if (!(K > 0.0)) throw NonPositiveK("K must be positive");
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FiniteDistribution>) {
          return finite_psi2_moment(v, K);
        } else if constexpr (std::is_same_v<T, NamedLaw>) {
          if (v == NamedLaw::Rademacher) return std::exp(1.0 / (K * K));
          const double a = 2.0 / (K * K);
          return a < 1.0 ? 1.0 / std::sqrt(1.0 - a) : inf();
        } else {
          return finite_psi2_moment(binary_atoms(v), K);
        }
      },
      d);
}

double mean(const Distribution& d) {
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FiniteDistribution>) {
          double m = 0.0;
          for (std::size_t i = 0; i < v.points.size(); ++i) m += v.masses[i] * v.points[i];
          return m;
        } else {
          return 0.0;  // named laws and binary shapes are centered
        }
      },
      d);
}

double variance(const Distribution& d) {
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FiniteDistribution>) {
          double m = 0.0;
          for (std::size_t i = 0; i < v.points.size(); ++i) m += v.masses[i] * v.points[i];
          double acc = 0.0;
          for (std::size_t i = 0; i < v.points.size(); ++i) {
            const double c = v.points[i] - m;
            acc += v.masses[i] * c * c;
          }
          return acc;
        } else if constexpr (std::is_same_v<T, NamedLaw>) {
          return 1.0;
        } else {
          return v.u * v.x1 * v.x1;
        }
      },
      d);
}

Distribution centered(const Distribution& d) {
  if (const auto* f = std::get_if<FiniteDistribution>(&d)) {
    const double m = mean(d);
    FiniteDistribution c = *f;
    for (double& x : c.points) x -= m;
    return c;
  }
  return d;
}

std::optional<FiniteDistribution> as_finite(const Distribution& d) {
  return std::visit(
      [&](const auto& v) -> std::optional<FiniteDistribution> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FiniteDistribution>) {
          return v;
        } else if constexpr (std::is_same_v<T, NamedLaw>) {
          if (v == NamedLaw::Rademacher) return rademacher_atoms();
          return std::nullopt;
        } else {
          return binary_atoms(v);
        }
      },
      d);
}

double max_abs_support(const FiniteDistribution& d) {
  double m = 0.0;
  for (double x : d.points) m = std::max(m, std::abs(x));
  return m;
}

double known_sigma(NamedLaw) { return 1.0; }

double known_psi2_norm(NamedLaw law) {
  return law == NamedLaw::StandardGaussian ? std::sqrt(8.0 / 3.0)
                                           : 1.0 / std::sqrt(std::numbers::ln2);
}

Distribution distribution_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  if (!j.is_array() || j.empty())
    throw InvalidDistribution("expected a nonempty JSON array of {\"x\",\"p\"} objects");
  std::vector<double> xs, ps;
  for (const auto& item : j) {
    if (!item.is_object() || !item.contains("x") || !item.contains("p"))
      throw InvalidDistribution("each atom must be an object with \"x\" and \"p\"");
    xs.push_back(item["x"].get<double>());
    ps.push_back(item["p"].get<double>());
  }
  try {
    return make_finite(xs, ps);
  } catch (const Error& e) {
    throw InvalidDistribution(e.what());
  }
}

}  // namespace subgauss
