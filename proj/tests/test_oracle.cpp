#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "subgauss/distribution.hpp"
#include "subgauss/norms.hpp"
#include "subgauss/oracle.hpp"

using namespace subgauss;
using oracle::QuadratureSpec;

namespace {
double gaussian_psi2_closed(double K) { return 1.0 / std::sqrt(1.0 - 2.0 / (K * K)); }
}  // namespace

TEST_CASE("quadrature spec invariants") {
  QuadratureSpec spec;
  CHECK(spec.panels % 2 == 0);
  CHECK(spec.tail_bound() == doctest::Approx(2.0 * std::exp(-72.0)).epsilon(1e-12));
  CHECK_THROWS_AS(oracle::simpson([](double) { return 1.0; }, 0.0, 1.0, 3),
                  std::invalid_argument);
}

TEST_CASE("gaussian psi2 quadrature matches the closed form") {
  QuadratureSpec spec{12.0, 4096};
  CHECK(std::abs(oracle::quad_gaussian_psi2(2.0, spec) - std::sqrt(2.0)) <= 1e-8);
  CHECK(std::abs(oracle::quad_gaussian_psi2(std::sqrt(8.0 / 3.0), spec) - 2.0) <= 1e-8);

  for (double K : {1.7, 2.5, 4.0, 10.0}) {
    // keep (K^2-2) R^2 / (2 K^2) >= 40 so the truncated tail is negligible
    const double R = std::max(12.0, std::sqrt(80.0 * K * K / (K * K - 2.0)));
    QuadratureSpec s{R, 8192};
    CHECK(std::abs(oracle::quad_gaussian_psi2(K, s) - gaussian_psi2_closed(K)) <=
          1e-8 * gaussian_psi2_closed(K));
  }

  // K -> large: the integrand collapses to the density, total mass 1
  QuadratureSpec wide{12.0, 4096};
  CHECK(oracle::quad_gaussian_psi2(1e6, wide) == doctest::Approx(1.0).epsilon(1e-10));

  CHECK_THROWS_AS(oracle::quad_gaussian_psi2(1.2, spec), KTooSmall);
  CHECK_THROWS_AS(oracle::quad_gaussian_psi2(std::numbers::sqrt2, spec), KTooSmall);
}

TEST_CASE("simpson error contracts by far more than 8x per halving in the h^4 regime") {
  const double target = std::sqrt(2.0);
  const double coarse = std::abs(oracle::quad_gaussian_psi2(2.0, QuadratureSpec{12.0, 16}) - target);
  const double fine = std::abs(oracle::quad_gaussian_psi2(2.0, QuadratureSpec{12.0, 32}) - target);
  REQUIRE(fine > 1e-15);  // still above the rounding floor
  CHECK(coarse / fine >= 8.0);
}

TEST_CASE("grid_sup_proxy reference values") {
  CHECK(std::abs(oracle::grid_sup_proxy(NamedLaw::Rademacher, 20.0, 100000) - 1.0) <= 1e-6);

  const Distribution pm = make_finite(std::vector<double>{0.4}, std::vector<double>{1.0});
  CHECK(oracle::grid_sup_proxy(pm, 10.0, 1000) == 0.0);

  const double closed = variance_proxy_binary(2.0, 0.5);
  const Distribution bin = make_centered_binary(2.0, 0.5);
  CHECK(std::abs(oracle::grid_sup_proxy(bin, 50.0, 100000) - closed * closed) <= 1e-6);
}

TEST_CASE("grid_sup_proxy grows monotonically under grid refinement") {
  const Distribution bin = make_centered_binary(3.0, 0.4);
  double prev = 0.0;
  for (long n : {1000L, 2000L, 4000L, 8000L}) {
    const double v = oracle::grid_sup_proxy(bin, 40.0, n);
    CHECK(v >= prev);  // nested grids for doubling n
    prev = v;
  }
}

TEST_CASE("finite differences recover known derivatives") {
  auto square = [](double x) { return x * x; };
  CHECK(std::abs(oracle::finite_diff(square, 3.0, 1, 1e-5) - 6.0) <= 1e-8);
  CHECK(std::abs(oracle::finite_diff(square, 3.0, 2, 1e-4) - 2.0) <= 1e-6);

  auto cube = [](double x) { return x * x * x; };
  CHECK(std::abs(oracle::finite_diff(cube, 0.7, 3, 1e-3) - 6.0) <= 1e-6);

  auto sine = [](double x) { return std::sin(x); };
  CHECK(std::abs(oracle::finite_diff(sine, 0.5, 1, 1e-5) - std::cos(0.5)) <= 1e-9);
  CHECK(std::abs(oracle::finite_diff(sine, 0.5, 2, 1e-4) + std::sin(0.5)) <= 1e-6);
  CHECK(std::abs(oracle::finite_diff(sine, 0.5, 3, 1e-3) + std::cos(0.5)) <= 1e-5);

  CHECK_THROWS_AS(oracle::finite_diff(square, 1.0, 4, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(oracle::finite_diff(square, 1.0, 1, 0.0), std::invalid_argument);
}
