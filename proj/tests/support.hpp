#ifndef BICRIT_TESTS_SUPPORT_HPP
#define BICRIT_TESTS_SUPPORT_HPP

#include <algorithm>
#include <complex>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "bicrit/map.hpp"

namespace testing_support {

using bicrit::cd;

inline cd random_complex(std::mt19937_64& rng, double radius = 2.0) {
  std::uniform_real_distribution<double> u(-radius, radius);
  return {u(rng), u(rng)};
}

inline bicrit::BicritMapd random_map(std::mt19937_64& rng, int n) {
  for (;;) {
    const cd a = random_complex(rng), b = random_complex(rng), c = random_complex(rng), d = random_complex(rng);
    if (std::abs(a * d - b * c) > 0.1) return bicrit::BicritMapd(n, a, b, c, d);
  }
}

/// Largest distance under the best pairing of two equal-size multisets.
/// Exhaustive over permutations, so only for small sizes.
inline double match_distance(const std::vector<cd>& x, std::vector<cd> y) {
  if (x.size() != y.size()) return std::numeric_limits<double>::infinity();
  std::vector<int> perm(y.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size() && worst < best; ++i)
      worst = std::max(worst, std::abs(x[i] - y[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline double rel_err(cd got, cd want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

}  // namespace testing_support

#endif  // BICRIT_TESTS_SUPPORT_HPP
