#ifndef SUBGAUSS_TESTS_SUPPORT_HPP
#define SUBGAUSS_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "subgauss/distribution.hpp"

namespace test_support {

/// Random centered finite law with 2..max_atoms atoms in [-2, 2].
inline subgauss::Distribution random_centered_law(std::mt19937_64& rng, int max_atoms = 6) {
  std::uniform_int_distribution<int> atom_count(2, max_atoms);
  std::uniform_real_distribution<double> atom(-2.0, 2.0);
  std::uniform_real_distribution<double> massw(0.05, 1.0);
  for (;;) {
    const int m = atom_count(rng);
    std::vector<double> xs(m), ps(m);
    double total = 0.0;
    for (int i = 0; i < m; ++i) {
      xs[i] = atom(rng);
      ps[i] = massw(rng);
      total += ps[i];
    }
    for (double& p : ps) p /= total;
    subgauss::Distribution d = subgauss::centered(subgauss::make_finite(xs, ps));
    if (subgauss::variance(d) > 1e-12) return d;
  }
}

}  // namespace test_support

#endif
