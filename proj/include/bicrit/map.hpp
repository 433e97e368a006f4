#ifndef BICRIT_MAP_HPP
#define BICRIT_MAP_HPP

#include <Eigen/Core>

#include <optional>
#include <vector>

#include "bicrit/sphere.hpp"

namespace bicrit {

/// A bicritical map z -> (a z^n + b) / (c z^n + d) with critical points 0 and
/// infinity. The coefficients are stored as the 2x2 matrix [a b; c d].
template <typename T>
class BicritMap {
 public:
  using Scalar = T;
  using Matrix = Eigen::Matrix<Complex<T>, 2, 2>;

  BicritMap(int n, Complex<T> a, Complex<T> b, Complex<T> c, Complex<T> d) : n_(n) {
    m_ << a, b, c, d;
    validate();
  }

  BicritMap(int n, const Matrix& m) : n_(n), m_(m) { validate(); }

  int degree() const { return n_; }
  const Matrix& coefficients() const { return m_; }
  Complex<T> a() const { return m_(0, 0); }
  Complex<T> b() const { return m_(0, 1); }
  Complex<T> c() const { return m_(1, 0); }
  Complex<T> d() const { return m_(1, 1); }
  Complex<T> det() const { return m_(0, 0) * m_(1, 1) - m_(0, 1) * m_(1, 0); }

  /// Critical values f(infinity) = a/c and f(0) = b/d.
  SpherePoint<T> critical_value_at_infinity() const { return SpherePoint<T>(a(), c()); }
  SpherePoint<T> critical_value_at_zero() const { return SpherePoint<T>(b(), d()); }

 private:
  void validate() {
    if (n_ < 2) throw Error(Errc::InvalidArgument, "degree must be >= 2");
    const T scale = std::abs(a() * d()) + std::abs(b() * c());
    if (!(std::abs(det()) > T(1e-14) * scale) || scale == T(0)) {
      throw Error(Errc::DegenerateMap, "ad - bc = 0");
    }
  }

  int n_;
  Matrix m_;
};

using BicritMapd = BicritMap<double>;

/// Homogeneous evaluation (z : w) -> (a z^n + b w^n : c z^n + d w^n).
template <typename T>
inline SpherePoint<T> eval(const BicritMap<T>& f, const SpherePoint<T>& z) {
  const int n = f.degree();
  const Complex<T> zn = ipow(z.num(), n);
  const Complex<T> wn = ipow(z.den(), n);
  Eigen::Matrix<Complex<T>, 2, 1> v(zn, wn);
  return SpherePoint<T>(f.coefficients() * v);
}

/// Affine evaluation for finite z; used as a cross-check of the homogeneous path.
template <typename T>
inline Complex<T> eval_affine(const BicritMap<T>& f, Complex<T> z) {
  const Complex<T> zn = ipow(z, f.degree());
  return (f.a() * zn + f.b()) / (f.c() * zn + f.d());
}

/// Derivative in the chart where the point is stored. For |z| <= 1 this is
/// n z^{n-1}(ad-bc)/(c z^n + d)^2; otherwise the chart u = 1/z is used, in
/// which the map reads (d u^n + c)/(b u^n + a).
template <typename T>
inline Complex<T> derivative_in_chart(const BicritMap<T>& f, const SpherePoint<T>& z) {
  const int n = f.degree();
  if (z.in_finite_chart()) {
    const Complex<T> x = z.num();
    const Complex<T> den = f.c() * ipow(x, n) + f.d();
    return T(n) * ipow(x, n - 1) * f.det() / (den * den);
  }
  const Complex<T> u = z.den();
  const Complex<T> den = f.b() * ipow(u, n) + f.a();
  return T(n) * ipow(u, n - 1) * f.det() / (den * den);
}

/// Multiplier at a fixed point. Throws NotFixedPoint when f(z) is farther
/// than `tol` (chordal) from z.
template <typename T>
inline Complex<T> multiplier_at(const BicritMap<T>& f, const SpherePoint<T>& z, T tol = T(1e-8)) {
  if (chordal_distance(eval(f, z), z) > tol) {
    throw Error(Errc::NotFixedPoint, "point is not fixed by the map");
  }
  // A fixed point stored in the other chart has f(z) in the same chart up to
  // rounding, so the chart derivative is the multiplier.
  return derivative_in_chart(f, z);
}

/// Scales the coefficients so that ad - bc = 1 (principal square root).
template <typename T>
inline BicritMap<T> normalize_det(const BicritMap<T>& f) {
  const Complex<T> s = std::sqrt(f.det());
  return BicritMap<T>(f.degree(), f.coefficients() / s);
}

/// Conjugate by z -> z/t^2: (a,b,c,d) -> (t^{n-1}a, b/t^{n+1}, t^{n+1}c, d/t^{n-1}).
/// The determinant is preserved, so a normalized map stays normalized.
template <typename T>
inline BicritMap<T> scale_conjugate(const BicritMap<T>& f, Complex<T> t) {
  if (t == Complex<T>(0)) throw Error(Errc::ZeroScale, "t = 0");
  const int n = f.degree();
  const Complex<T> tm = ipow(t, n - 1);
  const Complex<T> tp = ipow(t, n + 1);
  return BicritMap<T>(n, tm * f.a(), f.b() / tp, tp * f.c(), f.d() / tm);
}

/// 1/f(1/z): exchanges the roles of the two critical points.
template <typename T>
inline BicritMap<T> swap_critical(const BicritMap<T>& f) {
  return BicritMap<T>(f.degree(), f.d(), f.c(), f.b(), f.a());
}

/// Map with a fixed point at z = 1 of multiplier lambda and invariant X:
/// a = 1+mu+xi, b = 1-mu-xi, c = 1-mu+xi, d = 1+mu-xi, mu = lambda/n,
/// xi^2 = (1-mu)^2 - 4 mu X (principal root).
template <typename T>
inline BicritMap<T> fixed_point_normal_form(int n, Complex<T> lambda, Complex<T> X) {
  if (lambda == Complex<T>(0)) throw Error(Errc::ZeroMultiplier, "lambda = 0");
  const Complex<T> mu = lambda / T(n);
  const Complex<T> one(1);
  const Complex<T> xi = std::sqrt((one - mu) * (one - mu) - T(4) * mu * X);
  return BicritMap<T>(n, one + mu + xi, one - mu - xi, one - mu + xi, one + mu - xi);
}

/// The parabolic family [n+1+alpha, n-1-alpha; n-1+alpha, n+1-alpha] with f(1) = f'(1) = 1.
template <typename T>
inline BicritMap<T> parabolic_normal_form(int n, Complex<T> alpha) {
  const T np = T(n + 1), nm = T(n - 1);
  return BicritMap<T>(n, np + alpha, nm - alpha, nm + alpha, np - alpha);
}

enum class OrbitStatus { ConvergedTo, Cycling, MaxIterations };

template <typename T>
struct Orbit {
  std::vector<SpherePoint<T>> points;
  OrbitStatus status = OrbitStatus::MaxIterations;
  std::optional<SpherePoint<T>> limit;  // set for ConvergedTo
  int target_index = -1;
  int iterations = 0;
};

/// Iterates f from z0 until the orbit is captured by one of `targets` (within
/// eps chordally, with `contraction_steps` consecutive non-expanding steps),
/// returns to an earlier point (Brent cycle check), or max_iter is reached.
template <typename T>
Orbit<T> iterate_orbit(const BicritMap<T>& f, const SpherePoint<T>& z0, int max_iter,
                       const std::vector<SpherePoint<T>>& targets, T eps,
                       int contraction_steps = 3, bool record = true) {
  if (max_iter < 1) throw Error(Errc::InvalidArgument, "max_iter must be >= 1");
  if (!(eps > T(0))) throw Error(Errc::InvalidArgument, "eps must be positive");

  Orbit<T> orbit;
  if (record) orbit.points.push_back(z0);

  std::vector<T> prev(targets.size());
  std::vector<int> streak(targets.size(), 0);
  for (std::size_t j = 0; j < targets.size(); ++j) prev[j] = chordal_distance(z0, targets[j]);

  SpherePoint<T> z = z0;
  SpherePoint<T> saved = z0;
  long power = 1, lam = 0;
  const T cycle_tol = T(1e-13);

  for (int k = 1; k <= max_iter; ++k) {
    z = eval(f, z);
    if (record) orbit.points.push_back(z);
    orbit.iterations = k;

    bool near_target = false;
    for (std::size_t j = 0; j < targets.size(); ++j) {
      const T dist = chordal_distance(z, targets[j]);
      if (dist < eps) {
        near_target = true;
        streak[j] = dist <= prev[j] ? streak[j] + 1 : 0;
        if (streak[j] >= contraction_steps) {
          orbit.status = OrbitStatus::ConvergedTo;
          orbit.limit = targets[j];
          orbit.target_index = static_cast<int>(j);
          return orbit;
        }
      } else {
        streak[j] = 0;
      }
      prev[j] = dist;
    }

    if (!near_target) {
      if (chordal_distance(z, saved) < cycle_tol) {
        orbit.status = OrbitStatus::Cycling;
        return orbit;
      }
      if (++lam == power) {
        saved = z;
        power *= 2;
        lam = 0;
      }
    }
  }
  orbit.status = OrbitStatus::MaxIterations;
  return orbit;
}

}  // namespace bicrit

#endif  // BICRIT_MAP_HPP
