// Acceptance suite: runs each headline requirement at its stated tolerance
// and prints one pass/fail line per criterion. Exits nonzero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "subgauss/certificates.hpp"
#include "subgauss/distribution.hpp"
#include "subgauss/norms.hpp"
#include "subgauss/oracle.hpp"
#include "subgauss/parallel.hpp"

#include "support.hpp"

using namespace subgauss;

namespace {

constexpr double kLn2 = std::numbers::ln2;
const double kSqrtLog2 = std::sqrt(kLn2);
const double kSqrt38 = std::sqrt(3.0 / 8.0);
const double kSqrt83 = std::sqrt(8.0 / 3.0);

int failures = 0;

void criterion(int id, const std::string& label, double budget_ms,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  const auto start = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (ms > budget_ms) {
    ok = false;
    detail += detail.empty() ? "" : "; ";
    detail += "over time budget";
  }
  if (!ok) ++failures;
  std::printf("[%s] %2d %s  %s(%.2f ms, budget %.0f ms)\n", ok ? "PASS" : "FAIL", id,
              label.c_str(), detail.empty() ? "" : (detail + " ").c_str(), ms, budget_ms);
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.11g", v);
  return buf;
}

}  // namespace

int main() {
  criterion(1, "psi2 norm of gaussian = sqrt(8/3) +- 1e-9", 1.0, [](std::string& detail) {
    const NormResult r = psi2_norm(NamedLaw::StandardGaussian, 1e-10);
    detail = "value=" + num(r.value);
    return close(r.value, kSqrt83, 1e-9);
  });

  criterion(2, "psi2 norm of rademacher = 1/sqrt(log 2) +- 1e-9", 1.0, [](std::string& detail) {
    const NormResult r = psi2_norm(NamedLaw::Rademacher, 1e-10);
    detail = "value=" + num(r.value);
    return close(r.value, 1.0 / kSqrtLog2, 1e-9);
  });

  criterion(3, "variance proxy: rademacher (numeric) and gaussian (closed form)", 50.0,
            [](std::string& detail) {
              const NormResult rad = variance_proxy(NamedLaw::Rademacher, 1e-8);
              const NormResult gauss = variance_proxy(NamedLaw::StandardGaussian, 1e-8);
              detail = "rademacher=" + num(rad.value) + " gaussian=" + num(gauss.value);
              return close(rad.value, 1.0, 1e-6) && gauss.value == 1.0;
            });

  criterion(4, "ratio(gaussian) = sqrt(3/8), ratio(rademacher) = sqrt(log 2), +- 1e-6", 100.0,
            [](std::string& detail) {
              const double g = ratio(NamedLaw::StandardGaussian).ratio;
              const double r = ratio(NamedLaw::Rademacher).ratio;
              detail = "gaussian=" + num(g) + " rademacher=" + num(r);
              return close(g, kSqrt38, 1e-6) && close(r, kSqrtLog2, 1e-6);
            });

  criterion(5, "ratio band on 1000 seeded random centered laws", 30000.0,
            [](std::string& detail) {
              std::mt19937_64 rng(20240817);
              std::vector<Distribution> laws;
              laws.reserve(1000);
              for (int i = 0; i < 1000; ++i) laws.push_back(test_support::random_centered_law(rng));

              std::mutex mtx;
              double worst = std::numeric_limits<double>::infinity();
              parallel_for(laws.size(), [&](std::size_t begin, std::size_t end) {
                double local = std::numeric_limits<double>::infinity();
                for (std::size_t i = begin; i < end; ++i) {
                  const double r = ratio(laws[i]).ratio;
                  local = std::min({local, r - (kSqrt38 - 1e-6), (kSqrtLog2 + 1e-6) - r});
                }
                std::lock_guard<std::mutex> lock(mtx);
                worst = std::min(worst, local);
              });
              detail = "min band margin=" + num(worst);
              return worst >= 0.0;
            });

  criterion(6, "certificates F>=2, F'>=0, h>=0, h2>=0 on 1e4 grid points; F' vs FD", 5000.0,
            [](std::string& detail) {
              const int n = 10000;
              double worst = std::numeric_limits<double>::infinity();
              for (int i = 1; i <= n; ++i) {
                const double u = std::pow(100.0, static_cast<double>(i) / n);
                const HValues hv = h_functions(u);
                worst = std::min({worst, big_f(u) - 2.0, f_prime(u), hv.h, hv.h2});
              }
              double worst_fd = std::numeric_limits<double>::infinity();
              for (int i = 0; i < 300; ++i) {
                const double u = 1.01 * std::pow(50.0 / 1.01, i / 299.0);
                const double fd =
                    oracle::finite_diff([](double v) { return big_f(v); }, u, 1, 1e-6 * u);
                worst_fd =
                    std::min(worst_fd, 1e-5 - std::abs(fd - f_prime(u)) / std::abs(f_prime(u)));
              }
              detail = "min sign margin=" + num(worst) + " min fd margin=" + num(worst_fd);
              return worst >= -1e-12 && worst_fd >= 0.0;
            });

  criterion(7, "scan_h2_max_ratio(50, 500): max = sqrt(log 2) at the u = 1 end", 5000.0,
            [](std::string& detail) {
              const CertificateReport rep = scan_h2_max_ratio(50.0, 500);
              detail = "max=" + num(rep.worst_point[1]) + " at u=" + num(rep.worst_point[0]);
              return rep.passed && close(rep.worst_point[1], kSqrtLog2, 1e-6) &&
                     rep.worst_point[0] == 1.0;
            });

  criterion(8, "h2_mgf_max within e^{log2 s^2/2} (1+1e-9) at s in {+-0.5,+-1,+-2,+-4}", 5000.0,
            [](std::string& detail) {
              double worst = std::numeric_limits<double>::infinity();
              for (double s : {0.5, 1.0, 2.0, 4.0}) {
                for (double sign : {1.0, -1.0}) {
                  const double m = h2_mgf_max(sign * s, 1e-10);
                  worst = std::min(worst, std::exp(kLn2 * s * s / 2.0) * (1.0 + 1e-9) - m);
                }
              }
              detail = "min band margin=" + num(worst);
              return worst >= 0.0;
            });

  criterion(9, "h3 scan, 1e5 trials at s in {0.5,1,2,4}: no improvement over h2", 60000.0,
            [](std::string& detail) {
              double worst = std::numeric_limits<double>::infinity();
              bool all = true;
              for (double s : {0.5, 1.0, 2.0, 4.0}) {
                const CertificateReport rep = scan_h3_no_improvement(s, 100000, 42);
                worst = std::min(worst, rep.min_margin);
                all = all && rep.passed;
              }
              detail = "min margin=" + num(worst);
              return all;
            });

  criterion(10, "lower-bound inequality: gaussian equality at K=2; 100 random laws at K=2*sigma",
            5000.0, [](std::string& detail) {
              const double lhs = psi2_moment(NamedLaw::StandardGaussian, 2.0);
              const double sigma_g = variance_proxy(NamedLaw::StandardGaussian).value;
              const double rhs = 1.0 / std::sqrt(1.0 - 2.0 * sigma_g * sigma_g / 4.0);
              if (!close(lhs, rhs, 1e-8)) {
                detail = "gaussian equality gap=" + num(lhs - rhs);
                return false;
              }
              std::mt19937_64 rng(555);
              for (int i = 0; i < 100; ++i) {
                const Distribution law = test_support::random_centered_law(rng);
                const double sigma = variance_proxy(law).value;
                const CertificateReport rep =
                    check_lower_bound_inequality(law, 2.0 * sigma, 1e-9);
                if (!rep.passed) {
                  detail = "law " + std::to_string(i) + " margin=" + num(rep.min_margin);
                  return false;
                }
              }
              detail = "gaussian gap=" + num(lhs - rhs) + ", 100 laws passed";
              return true;
            });

  criterion(11, "oracle cross-checks: quadrature at sqrt(8/3); closed sigma vs grid sup", 30000.0,
            [](std::string& detail) {
              const double quad =
                  oracle::quad_gaussian_psi2(kSqrt83, oracle::QuadratureSpec{12.0, 4096});
              if (!close(quad, 2.0, 1e-8)) {
                detail = "quad=" + num(quad);
                return false;
              }
              // 50 x 20 grid in (u, x1); grid_sup_proxy returns sigma^2
              std::vector<std::pair<double, double>> cells;
              for (int i = 0; i < 50; ++i)
                for (int j = 0; j < 20; ++j)
                  cells.emplace_back(1.0 + 19.0 * i / 49.0, 0.05 + 0.95 * j / 19.0);
              std::mutex mtx;
              double worst = 0.0;
              parallel_for(cells.size(), [&](std::size_t begin, std::size_t end) {
                double local = 0.0;
                for (std::size_t i = begin; i < end; ++i) {
                  const auto [u, x1] = cells[i];
                  const Distribution law = make_centered_binary(u, x1);
                  const double s_max = 50.0 / (u * x1);
                  const double grid = std::sqrt(oracle::grid_sup_proxy(law, s_max, 100000));
                  local = std::max(local, std::abs(grid - variance_proxy_binary(u, x1)));
                }
                std::lock_guard<std::mutex> lock(mtx);
                worst = std::max(worst, local);
              });
              detail = "quad=" + num(quad) + " max |closed - grid|=" + num(worst);
              return worst <= 1e-6;
            });

  criterion(12, "appendix determinant: exact zeros at duplicates; det(0,1,2)", 1.0,
            [](std::string& detail) {
              const double expected = std::exp(4.0) - 2.0 * std::exp(1.0) + 1.0;
              const double det = vandermonde_like_det(0.0, 1.0, 2.0);
              detail = "det(0,1,2)=" + num(det);
              return vandermonde_like_det(0.0, 1.0, 1.0) == 0.0 &&
                     vandermonde_like_det(0.3, 0.3, 1.0) == 0.0 &&
                     vandermonde_like_det(0.5, 1.0, 0.5) == 0.0 && close(det, expected, 1e-10);
            });

  if (failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", failures);
  return 1;
}
