#ifndef BICRIT_INVARIANTS_HPP
#define BICRIT_INVARIANTS_HPP

#include <utility>

#include "bicrit/map.hpp"

namespace bicrit {

/// Marked invariants (X, Y1, Y2) with Y1 Y2 = X^{n-1} (X+1)^{n+1}.
template <typename T>
struct MarkedModuliPoint {
  int n;
  Complex<T> X, Y1, Y2;
};

/// A point of moduli space with coordinates X and Y = Y1 + Y2.
template <typename T>
struct ModuliPoint {
  int n;
  Complex<T> X, Y;
};

using MarkedModuliPointd = MarkedModuliPoint<double>;
using ModuliPointd = ModuliPoint<double>;

/// X^{n-1} (X+1)^{n+1}, the right-hand side of the marked relation.
template <typename T>
inline Complex<T> marked_relation_rhs(int n, Complex<T> X) {
  return ipow(X, n - 1) * ipow(X + T(1), n + 1);
}

template <typename T>
MarkedModuliPoint<T> invariants_marked(const BicritMap<T>& f) {
  // After det normalization X = bc, Y1 = a^{n+1} b^{n-1}, Y2 = c^{n-1} d^{n+1};
  // the sign ambiguity of the square root cancels in even total degree.
  const BicritMap<T> g = normalize_det(f);
  const int n = g.degree();
  return {n, g.b() * g.c(), ipow(g.a(), n + 1) * ipow(g.b(), n - 1),
          ipow(g.c(), n - 1) * ipow(g.d(), n + 1)};
}

template <typename T>
ModuliPoint<T> moduli_point(const BicritMap<T>& f) {
  const auto m = invariants_marked(f);
  return {m.n, m.X, m.Y1 + m.Y2};
}

/// Splits Y into (Y1, Y2) as the roots of T^2 - Y T + X^{n-1}(X+1)^{n+1};
/// Y2 is the root of larger magnitude.
template <typename T>
MarkedModuliPoint<T> split_marked(const ModuliPoint<T>& p) {
  const Complex<T> prod = marked_relation_rhs(p.n, p.X);
  const Complex<T> disc = std::sqrt(p.Y * p.Y - T(4) * prod);
  Complex<T> r1 = (p.Y + disc) / T(2);
  Complex<T> r2 = (p.Y - disc) / T(2);
  Complex<T> big = std::abs(r1) >= std::abs(r2) ? r1 : r2;
  Complex<T> small = big == Complex<T>(0) ? Complex<T>(0) : prod / big;
  return {p.n, p.X, small, big};
}

/// A representative map of the class p.
template <typename T>
BicritMap<T> reconstruct(const ModuliPoint<T>& p) {
  const int n = p.n;
  const auto m = split_marked(p);
  if (std::abs(m.Y2) < T(1e-14)) {
    // Both marked invariants vanish: the class of z^n or of 1/z^n.
    if (std::abs(p.X) <= std::abs(p.X + T(1))) {
      return BicritMap<T>(n, 1, 0, 0, 1);
    }
    return BicritMap<T>(n, 0, 1, 1, 0);
  }
  // Case Y2 != 0: d = 1, a = X + 1, c^{n-1} = Y2, b = X / c.
  const Complex<T> c = n == 2 ? m.Y2 : std::pow(m.Y2, T(1) / T(n - 1));
  return BicritMap<T>(n, p.X + T(1), p.X / c, c, Complex<T>(1));
}

template <typename T>
T relation_residual(const MarkedModuliPoint<T>& p) {
  return std::abs(p.Y1 * p.Y2 - marked_relation_rhs(p.n, p.X));
}

/// X as minus the cross-ratio (c1 - v1)(c2 - v2) / ((c1 - c2)(v1 - v2)),
/// evaluated with brackets so that points at infinity are exact.
template <typename T>
Complex<T> cross_ratio_X(const SpherePoint<T>& c1, const SpherePoint<T>& c2,
                         const SpherePoint<T>& v1, const SpherePoint<T>& v2) {
  const Complex<T> cc = bracket(c1, c2);
  const Complex<T> vv = bracket(v1, v2);
  if (cc == Complex<T>(0) || vv == Complex<T>(0)) {
    throw Error(Errc::DegenerateConfiguration, "coincident critical points or values");
  }
  return -(bracket(c1, v1) * bracket(c2, v2)) / (cc * vv);
}

template <typename T>
Complex<T> cross_ratio_X(const BicritMap<T>& f) {
  return cross_ratio_X(SpherePoint<T>::infinity(), SpherePoint<T>(Complex<T>(0)),
                       f.critical_value_at_infinity(), f.critical_value_at_zero());
}

enum class SymmetryComponent { Plus, Minus, None };

struct SymmetryResidual {
  double residual;
  SymmetryComponent component;
};

/// |Y^2 - 4 X^{n-1}(X+1)^{n+1}|; for odd n on the locus, which signed branch
/// Y = +-2 X^{(n-1)/2} (X+1)^{(n+1)/2} holds.
inline SymmetryResidual symmetry_residual(const ModuliPointd& p, double tol = 1e-9) {
  const int n = p.n;
  const double residual = std::abs(p.Y * p.Y - 4.0 * marked_relation_rhs(n, p.X));
  const double scale = 1.0 + std::pow(std::abs(p.X), 2 * n) + std::norm(p.Y);
  SymmetryComponent comp = SymmetryComponent::None;
  if (n % 2 == 1 && residual <= tol * scale) {
    const cd branch = 2.0 * ipow(p.X, (n - 1) / 2) * ipow(p.X + 1.0, (n + 1) / 2);
    const double plus = std::abs(p.Y - branch);
    const double minus = std::abs(p.Y + branch);
    comp = plus <= minus ? SymmetryComponent::Plus : SymmetryComponent::Minus;
  }
  return {residual, comp};
}

/// Sum and product of the multipliers at the two involution-fixed points on
/// the plus branch of the symmetry locus (odd n).
inline std::pair<cd, cd> symmetry_sigma_plus_multipliers(int n, cd X) {
  if (n % 2 == 0) throw Error(Errc::EvenDegree, "defined for odd n only");
  return {2.0 * n * (2.0 * X + 1.0), cd(double(n) * n)};
}

/// X on the (irreducible) symmetry locus of even degree with invariant fixed
/// point of multiplier lambda: (lambda/n + n/lambda - 2)/4.
inline cd symmetry_even_X(int n, cd lambda) {
  if (n % 2 == 1) throw Error(Errc::OddDegree, "defined for even n only");
  if (lambda == cd(0)) throw Error(Errc::ZeroMultiplier, "lambda = 0");
  return (lambda / double(n) + double(n) / lambda - 2.0) / 4.0;
}

template <typename T>
ModuliPoint<T> epstein_star(const ModuliPoint<T>& p) {
  if (p.X == Complex<T>(-1)) throw Error(Errc::PoleAtMinusOne, "X = -1");
  const T sign = p.n % 2 == 0 ? T(1) : T(-1);
  return {p.n, T(-1) - p.X, sign * p.Y * p.X / (T(1) + p.X)};
}

template <typename T>
ModuliPoint<T> j_involution(const ModuliPoint<T>& p) {
  return {p.n, p.X, -p.Y};
}

struct ModulusBounds {
  double lower;
  double upper;
};

/// Bounds on the largest modulus of an annulus separating the critical
/// points from the critical values, in terms of r = |X|. The upper bound is
/// the modulus of the Teichmueller ring C \ ([-1,0] u [r, inf]).
ModulusBounds modulus_bounds(cd X);

/// Grötzsch ring function mu(s) = (pi/2) K'(s)/K(s), 0 < s < 1.
double grotzsch_mu(double s);

/// Complete elliptic integral of the first kind K(k) via the AGM.
double elliptic_k(double k);

}  // namespace bicrit

#endif  // BICRIT_INVARIANTS_HPP
