#include <cmath>
#include <numbers>

#include "bicrit/invariants.hpp"

namespace bicrit {

namespace {

double agm(double a, double b) {
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
    const double m = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = m;
  }
  return 0.5 * (a + b);
}

// mu(s) with the complementary modulus passed explicitly, so that s close to
// 0 or 1 does not lose digits in sqrt(1 - s^2).
double mu_pair(double s, double s_comp) {
  return 0.5 * std::numbers::pi * agm(1.0, s_comp) / agm(1.0, s);
}

}  // namespace

double elliptic_k(double k) {
  if (!(k >= 0.0 && k < 1.0)) throw Error(Errc::InvalidArgument, "modulus k must be in [0, 1)");
  return 0.5 * std::numbers::pi / agm(1.0, std::sqrt((1.0 - k) * (1.0 + k)));
}

double grotzsch_mu(double s) {
  if (!(s > 0.0 && s < 1.0)) throw Error(Errc::InvalidArgument, "s must be in (0, 1)");
  return mu_pair(s, std::sqrt((1.0 - s) * (1.0 + s)));
}

ModulusBounds modulus_bounds(cd X) {
  const double r = std::abs(X);
  if (r == 0.0) throw Error(Errc::ZeroX, "X = 0");
  const double lower = std::max(0.0, std::log(r) / (2.0 * std::numbers::pi));
  // mod(C \ ([-1,0] u [r,inf])) = mu(1/sqrt(1+r)) / pi, in the normalization
  // where the round annulus 1 < |z| < R has modulus log(R)/(2 pi).
  const double s = 1.0 / std::sqrt(1.0 + r);
  const double s_comp = std::sqrt(r / (1.0 + r));
  const double upper = mu_pair(s, s_comp) / std::numbers::pi;
  return {lower, upper};
}

}  // namespace bicrit
