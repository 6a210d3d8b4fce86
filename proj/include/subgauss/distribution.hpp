#ifndef SUBGAUSS_DISTRIBUTION_HPP
#define SUBGAUSS_DISTRIBUTION_HPP

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "subgauss/errors.hpp"

namespace subgauss {

/// Finite-support probability law. Points are sorted ascending and pairwise
/// distinct; masses are strictly positive and sum to 1 (exactly, after the
/// normalization performed by make_finite).
struct FiniteDistribution {
  std::vector<double> points;
  std::vector<double> masses;
};

/// Analytically known laws with closed-form moments.
enum class NamedLaw {
  StandardGaussian,  // mean 0, variance 1
  Rademacher,        // mass 1/2 at each of -1, +1
};

/// Centered two-point law parametrized by the odds ratio u = p/(1-p) >= 1 and
/// the location x1 != 0 of the heavier atom. The induced law puts mass
/// u/(1+u) at x1 and mass 1/(1+u) at -u*x1, so its mean is exactly zero.
struct CenteredBinaryShape {
  double u;
  double x1;
};

using Distribution = std::variant<FiniteDistribution, NamedLaw, CenteredBinaryShape>;

/// Builds a finite law from raw atoms. Coincident points (within 1e-12
/// absolute) are merged by mass addition, the result is sorted ascending, and
/// masses are renormalized so that they sum to exactly 1.
///
/// Throws LengthMismatch, NonPositiveMass, or MassSumOutOfTolerance
/// (input masses must sum to 1 within 1e-9).
Distribution make_finite(std::span<const double> points, std::span<const double> masses);

/// Builds the centered two-point law for odds ratio u >= 1 and heavy-atom
/// location x1 != 0. Throws UOutOfRange or ZeroX1.
Distribution make_centered_binary(double u, double x1);

/// Moment generating function M(s) = E e^{sX}.
double mgf(const Distribution& d, double s);

/// log M(s), computed stably for both tiny and large s. For finite laws with
/// max |s x_i| < 1/2 the sum is accumulated with expm1 so that near-cancelling
/// terms of a centered law do not wash out the O(s^2) signal.
double log_mgf(const Distribution& d, double s);
double log_mgf(const FiniteDistribution& f, double s);

/// E e^{X^2/K^2} for K > 0; +infinity where the expectation diverges
/// (StandardGaussian with K^2 <= 2, or any finite atom with (x/K)^2 > 700).
/// Throws NonPositiveK.
double psi2_moment(const Distribution& d, double K);

double mean(const Distribution& d);
double variance(const Distribution& d);

/// Shifts all atoms by -mean(d); NamedLaw and CenteredBinaryShape are already
/// centered and returned unchanged.
Distribution centered(const Distribution& d);

/// Finite-support view: the atoms of a FiniteDistribution, the two atoms of a
/// Rademacher or CenteredBinaryShape; nullopt for the standard Gaussian.
std::optional<FiniteDistribution> as_finite(const Distribution& d);

/// Largest |x_i| over the support (0 for the point mass at 0).
double max_abs_support(const FiniteDistribution& d);

/// Values stated in closed form for the named laws: the sub-Gaussian
/// parameter and the psi2 norm.
double known_sigma(NamedLaw law);
double known_psi2_norm(NamedLaw law);

/// Parses the distribution file format: a JSON array of {"x": real, "p": real}
/// objects. Throws ParseError / InvalidDistribution.
Distribution distribution_from_json_text(const std::string& text);

}  // namespace subgauss

#endif
