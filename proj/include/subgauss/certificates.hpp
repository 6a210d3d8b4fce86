#ifndef SUBGAUSS_CERTIFICATES_HPP
#define SUBGAUSS_CERTIFICATES_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "subgauss/distribution.hpp"

#include "json.hpp"

namespace subgauss {

/// Outcome of one inequality scan: the worst slack seen over the evaluation
/// grid and where it occurred. passed is equivalent to min_margin >= -tol for
/// the tolerance stated by the producing scan.
struct CertificateReport {
  std::string name;
  std::string grid_spec;
  double min_margin = 0.0;
  std::vector<double> worst_point;
  bool passed = false;
};

void to_json(nlohmann::json& j, const CertificateReport& r);

/// A three-point candidate law: masses p (positive, summing to 1) on distinct
/// points x with sum p_i x_i = 0 and sum p_i e^{x_i^2} <= 2.
struct H3Point {
  std::array<double, 3> masses{};
  std::array<double, 3> points{};
};

bool satisfies_h3_constraints(const H3Point& pt, double tol = 1e-12);

/// alpha(u) = 2 log 2 * log(u)/(u^2-1), extended by its limit log 2 at u = 1.
double alpha(double u);

/// G(u,t) = u/(1+u) e^t + 1/(1+u) e^{u^2 t}; +infinity once u^2 t > 700.
double big_g(double u, double t);

/// F(u) = G(u, alpha(u)); F(1) = 2.
double big_f(double u);

/// F'(u) = [h1(u) e^{alpha(u)} + h2(u) e^{u^2 alpha(u)}] / ((1+u)(u^2-1)^2),
/// defined for u > 1.
double f_prime(double u);

struct HValues {
  double h1;
  double h2;
  double h;
};

/// h1(u) = 2 log 2 (u^2 - 1 - 2u^2 log u) + (1+u)(u-1)^2,
/// h2(u) = 2 log 2 (u^3 - u - 2u log u) - (1+u)(u-1)^2, h = h1 + h2.
HValues h_functions(double u);

/// Analytic third derivatives used by the finite-difference cross-checks.
double h_third(double u);
double h2_third(double u);

/// w''(t) = (6 + 8 t^4)/(1 + 2 t^2)^2, strictly positive.
double w_second(double t);

/// The unique t with G(u, t) = 2, bracketed inside [0, log 2].
double solve_t_star(double u, double tol = 1e-12);

/// Shape-only ratio sigma/psi2 of the binary law sitting on the moment
/// boundary: solves G(u, t*) = 2 and returns sqrt(t* (u^2-1)/(2 log u)).
double binary_ratio(double u, double tol);

/// Scans binary_ratio over a geometric u-grid; passes when the maximum stays
/// below sqrt(log 2) + 1e-8 and is attained at the u = 1 end within 1e-6.
CertificateReport scan_h2_max_ratio(double u_max, int n);

/// sup of the moment generating function at s over binary laws on the moment
/// boundary, searched over a geometric u-grid with golden-section refinement.
double h2_mgf_max(double s, double tol);

/// Rejection-samples `trials` feasible three-point laws and checks that none
/// beats h2_mgf_max(s) + 1e-7. Deterministic for a fixed seed.
CertificateReport scan_h3_no_improvement(double s, long trials, std::uint64_t seed);

/// Tail bounds for laws in the moment set: the exponential variant for
/// K >= 2|s| and the first-moment variant when additionally K >= 2.
/// Throws NotInMomentSet / KTooSmall.
CertificateReport check_tail_bound(const Distribution& d, double s, double K);

/// Gaussian-smoothing bound E e^{X^2/K^2} <= (1 - 2 sigma^2/K^2)^{-1/2} for a
/// centered law and K > sqrt(2) sigma. Throws PreconditionNotMet.
CertificateReport check_lower_bound_inequality(const Distribution& d, double K, double tol);

/// Determinant of [[1,1,1],[x1,x2,x3],[e^{x1^2},e^{x2^2},e^{x3^2}]] by
/// cofactor expansion; exactly zero whenever two arguments coincide.
double vandermonde_like_det(double x1, double x2, double x3);

}  // namespace subgauss

#endif
