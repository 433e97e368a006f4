#ifndef BICRIT_SPHERE_HPP
#define BICRIT_SPHERE_HPP

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <limits>

#include "bicrit/error.hpp"

namespace bicrit {

template <typename T>
using Complex = std::complex<T>;

using cd = std::complex<double>;

/// Integer power by repeated squaring. std::pow(complex, int) goes through
/// exp/log, which is slower and loses the exactness of small integer powers.
template <typename T>
inline Complex<T> ipow(Complex<T> z, int k) {
  Complex<T> result(1);
  while (k > 0) {
    if (k & 1) result *= z;
    z *= z;
    k >>= 1;
  }
  return result;
}

template <typename T>
inline T abs1(const Complex<T>& z) {
  return std::abs(z.real()) + std::abs(z.imag());
}

/// A point of the Riemann sphere in homogeneous coordinates (num : den).
///
/// The representation is canonical: the component of larger magnitude is
/// scaled to exactly 1, so finite points with |z| <= 1 are stored as (z : 1)
/// and the rest as (1 : 1/z). Infinity is (1 : 0).
template <typename T>
class SpherePoint {
 public:
  using Scalar = T;
  using Vector = Eigen::Matrix<Complex<T>, 2, 1>;

  SpherePoint() : h_(Complex<T>(0), Complex<T>(1)) {}

  SpherePoint(Complex<T> z) : SpherePoint(z, Complex<T>(1)) {}  // NOLINT

  SpherePoint(Complex<T> num, Complex<T> den) {
    if (num == Complex<T>(0) && den == Complex<T>(0)) {
      throw Error(Errc::InvalidArgument, "homogeneous point (0:0)");
    }
    h_ << num, den;
    normalize();
  }

  explicit SpherePoint(const Vector& h) : SpherePoint(h(0), h(1)) {}

  static SpherePoint infinity() { return SpherePoint(Complex<T>(1), Complex<T>(0)); }

  const Complex<T>& num() const { return h_(0); }
  const Complex<T>& den() const { return h_(1); }
  const Vector& homogeneous() const { return h_; }

  bool is_infinity() const { return h_(1) == Complex<T>(0); }

  /// Affine coordinate; infinity maps to (inf, 0).
  Complex<T> affine() const {
    if (is_infinity()) return Complex<T>(std::numeric_limits<T>::infinity(), 0);
    return h_(0) / h_(1);
  }

  /// True when the point lies in the unit disk chart, i.e. stored as (z : 1).
  bool in_finite_chart() const { return h_(1) == Complex<T>(1); }

 private:
  void normalize() {
    if (std::abs(h_(0)) > std::abs(h_(1))) {
      h_(1) /= h_(0);
      h_(0) = Complex<T>(1);
    } else {
      h_(0) /= h_(1);
      h_(1) = Complex<T>(1);
    }
  }

  Vector h_;
};

using SpherePointd = SpherePoint<double>;

/// Determinant [p, q] = p0*q1 - q0*p1; the homogeneous form of p - q.
template <typename T>
inline Complex<T> bracket(const SpherePoint<T>& p, const SpherePoint<T>& q) {
  return p.num() * q.den() - q.num() * p.den();
}

/// Chordal distance |z - w| / (sqrt(1+|z|^2) sqrt(1+|w|^2)), with values in [0, 1].
template <typename T>
inline T chordal_distance(const SpherePoint<T>& p, const SpherePoint<T>& q) {
  return std::abs(bracket(p, q)) / (p.homogeneous().norm() * q.homogeneous().norm());
}

template <typename T>
inline bool approx_equal(const SpherePoint<T>& p, const SpherePoint<T>& q, T tol = T(1e-12)) {
  return chordal_distance(p, q) <= tol;
}

}  // namespace bicrit

#endif  // BICRIT_SPHERE_HPP
