#ifndef BICRIT_PARABOLIC_HPP
#define BICRIT_PARABOLIC_HPP

#include <string>
#include <utility>
#include <vector>

#include "bicrit/map.hpp"

namespace bicrit {

/// w = 2/(alpha (z - 1)); sends the parabolic point z = 1 to w = infinity.
SpherePointd w_coordinate(cd alpha, const SpherePointd& z);
SpherePointd z_from_w(cd alpha, const SpherePointd& w);

/// w-images of the critical values f(0) and f(infinity) of parabolic_normal_form(n, alpha).
std::pair<cd, cd> critical_w_values(int n, cd alpha);

/// The map f_alpha in the w-coordinate, F(w) = w + 1 + kappa/w + O(1/w^2).
/// Evaluated in a form that avoids the cancellation in f(z) - 1 near z = 1.
cd parabolic_w_map(int n, cd alpha, cd w);

/// kappa = (n^2 - 1)/(3 alpha^2), the 1/w coefficient of F.
cd w_map_kappa(int n, cd alpha);

struct FatouResult {
  cd phi;                 // (phi(c1) - phi(c2))^2
  cd difference;          // phi(c2) - phi(c1)
  int iterations = 0;
  double error_estimate = 0;  // last increment of the limit sequence
  bool extrapolated = false;  // Richardson step used at the budget
};

/// Fatou-difference invariant of parabolic_normal_form(n, alpha), from the
/// limit of F^m(w2) - F^m(w1). The sequence is corrected by the -kappa log(w)
/// term of the Fatou coordinate, so increments fall off like 1/m^3 instead of 1/m^2.
FatouResult fatou_phi(int n, cd alpha, double tol = 1e-12, int max_m = 100000);

/// The uncorrected differences d_m = F^m(w2) - F^m(w1) for m = 0..count-1.
std::vector<cd> fatou_differences(int n, cd alpha, int count);

/// -n/X, the large-|X| asymptotic value of the Fatou-difference invariant.
cd phi_asymptotic(int n, cd X);

/// Principal square root of (n-1)^2 - 4nX.
cd alpha_from_X(int n, cd X);

/// z -> z^n + b with a parabolic fixed point of multiplier 1.
struct ParabolicPolynomial {
  int n = 2;
  double b = 0;
  double fixed_point = 0;
};

ParabolicPolynomial parabolic_polynomial(int n);

/// Fatou coordinate of the attracting petal of parabolic_polynomial(n),
/// normalized by phi(w) = w - kappa log w + c1/w + o(1/w) in the chart
/// w = -1/(A2 (z - fixed_point)).
class PetalCoordinate {
 public:
  explicit PetalCoordinate(int n, int depth_steps = 1000);

  const ParabolicPolynomial& polynomial() const { return p_; }
  cd map(cd z) const;           // z^n + b
  cd pullback(cd z) const;      // the inverse branch fixing the parabolic point
  cd chart(cd z) const;         // w(z)
  cd chart_inverse(cd w) const;
  cd asymptotic(cd w) const;    // phi in the chart, valid for large |w|
  cd phi(cd z) const;           // throws NotInParabolicBasin
  cd phi_inverse(cd W) const;   // the point of the petal with phi = W
  int steps() const { return steps_; }
  cd step_u(cd u) const;        // the map in u = z - fixed_point
  cd unstep_u(cd v) const;      // its inverse on the petal branch

 private:
  ParabolicPolynomial p_;
  std::vector<double> taylor_;  // A_k, k = 2..n
  double A2_ = 1;
  double kappa_ = 1, c1_ = 0.5;
  int steps_;
};

struct PetalCurve {
  std::vector<cd> points;
  std::vector<int> parent;  // index in the previous curve of f(points[i]); empty for curve 0
};

struct PetalFamily {
  ParabolicPolynomial poly;
  cd critical_phi;  // phi(0); curve 0 is phi^{-1}(Re = Re phi(0))
  std::vector<PetalCurve> curves;
};

/// Boundaries of the nested petals P0 in P1 in ...; curve k+1 is the full
/// f-preimage of curve k, traced by continuation through n sheets.
/// Adjacent points are at most `spacing` apart. Throws DepthBudget when a
/// lift fails to close or would exceed `max_points`.
PetalFamily petal_family(int n, int depth, double spacing = 1e-3, std::size_t max_points = 4000000);

/// One row per vertex: curve_index,re,im with a header row.
std::string petal_csv(const PetalFamily& fam);

/// Winding number of a closed polyline around z.
int winding_number(const std::vector<cd>& curve, cd z);

}  // namespace bicrit

#endif  // BICRIT_PARABOLIC_HPP
