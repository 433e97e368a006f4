#ifndef BICRIT_CLASSIFY_HPP
#define BICRIT_CLASSIFY_HPP

#include <optional>
#include <utility>
#include <vector>

#include "bicrit/fixed_points.hpp"
#include "bicrit/invariants.hpp"

namespace bicrit {

enum class Locus { Connected, HyperbolicShift, ParabolicShift, Undetermined };

const char* to_string(Locus l);

struct ClassifyBudget {
  int max_iter_hyperbolic = 5000;
  int max_iter_parabolic = 50000;
  double eps = 1e-6;           // chordal capture radius around an attracting point
  int contraction_steps = 3;   // consecutive non-expanding steps inside eps
  int parabolic_steps = 25;    // consecutive unit translations in the petal chart
  double parabolic_band = 1e-8;  // |lambda - 1| below this is treated as parabolic
};

struct ClassificationResult {
  Locus locus = Locus::Undetermined;
  std::optional<SpherePointd> attracting_point;
  std::pair<int, int> iterations_used{0, 0};  // orbits of the critical points infinity, 0
  std::optional<double> slow_rate;  // iterations of the slower orbit to be captured
  std::optional<FixedRegime> regime;
};

/// Local data of a parabolic fixed point (multiplier 1). In the chart where
/// the point has |x| <= 1 the map reads x + h -> x + h + A2 h^2 + A3 h^3 + ...;
/// with m = 1 (A = A2) or m = 2 (A = A3, when A2 vanishes) the coordinate
/// w = -1/(m A h^m) translates by about +1 per step in every attracting petal.
struct ParabolicChart {
  bool swapped = false;  // chart u = 1/z
  cd center;
  cd A2, A3;
  int petals = 1;
  cd rotation;  // v = rotation * h has w = 1/v^m
};

ParabolicChart parabolic_chart(const BicritMapd& f, const SpherePointd& fixed_point);

/// A fixed point the critical orbits may be captured by.
struct Target {
  SpherePointd point;
  cd multiplier;
  bool parabolic = false;
  ParabolicChart chart;
};

/// Attracting and parabolic fixed points of f.
std::vector<Target> capture_targets(const BicritMapd& f, const MultiplierSpectrum& s, double parabolic_band);

/// Fate of a single orbit: index of the capturing target (-1 if none) and,
/// for a parabolic target, the petal. `undetermined` marks an orbit still
/// creeping toward a target when the budget ran out.
struct OrbitFate {
  int target = -1;
  int petal = 0;
  int iterations = 0;
  bool undetermined = false;
};

OrbitFate orbit_fate(const BicritMapd& f, const SpherePointd& z, const std::vector<Target>& targets,
                     const ClassifyBudget& budget);

/// Critical-orbit analysis against the given targets.
ClassificationResult classify_with_targets(const BicritMapd& f, const std::vector<Target>& targets,
                                           const ClassifyBudget& budget);

ClassificationResult classify_map(const BicritMapd& f, const ClassifyBudget& budget = {});

ClassificationResult classify(const ModuliPointd& p, const ClassifyBudget& budget = {});

/// Classification of the normal form with fixed point 1 of multiplier lambda,
/// using only that fixed point as capture target when it attracts.
ClassificationResult classify_per1_sample(int n, cd lambda, cd X, const ClassifyBudget& budget = {});

}  // namespace bicrit

#endif  // BICRIT_CLASSIFY_HPP
