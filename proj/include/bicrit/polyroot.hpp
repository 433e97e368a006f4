#ifndef BICRIT_POLYROOT_HPP
#define BICRIT_POLYROOT_HPP

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <numbers>
#include <random>
#include <vector>

#include "bicrit/sphere.hpp"

namespace bicrit {

/// Dense complex polynomial, coefficients lowest degree first. Trailing
/// (leading-degree) exact zeros are trimmed.
template <typename T>
class ComplexPolynomial {
 public:
  ComplexPolynomial() = default;
  explicit ComplexPolynomial(std::vector<Complex<T>> coeffs) : c_(std::move(coeffs)) { trim(); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Complex<T>>& coefficients() const { return c_; }
  Complex<T> operator[](int k) const { return k < static_cast<int>(c_.size()) ? c_[k] : Complex<T>(0); }

  Complex<T> operator()(Complex<T> z) const {
    Complex<T> acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  /// Sum |c_k| |z|^k, the scale against which a residual is judged.
  T magnitude(Complex<T> z) const {
    T acc(0);
    const T r = std::abs(z);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * r + std::abs(*it);
    return acc;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == Complex<T>(0)) c_.pop_back();
  }

  std::vector<Complex<T>> c_;
};

using ComplexPolynomiald = ComplexPolynomial<double>;

template <typename T>
struct PolyRoot {
  Complex<T> value;
  int multiplicity;
};

namespace detail {

// Newton ratio p(z)/p'(z). Outside the unit disk the reversed polynomial is
// used so that large roots do not overflow.
template <typename T>
Complex<T> newton_ratio(const std::vector<Complex<T>>& c, Complex<T> z) {
  const int d = static_cast<int>(c.size()) - 1;
  if (std::abs(z) <= T(1)) {
    Complex<T> p = c[d], dp(0);
    for (int k = d - 1; k >= 0; --k) {
      dp = dp * z + p;
      p = p * z + c[k];
    }
    return p / dp;
  }
  const Complex<T> u = T(1) / z;
  Complex<T> q = c[0], dq(0);
  for (int k = 1; k <= d; ++k) {
    dq = dq * u + q;
    q = q * u + c[k];
  }
  return z * q / (T(d) * q - u * dq);
}

inline std::uint64_t hash_coefficients(const void* data, std::size_t bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < bytes; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

template <typename T>
bool aberth(const std::vector<Complex<T>>& c, std::vector<Complex<T>>& z, int max_iter) {
  const int d = static_cast<int>(z.size());
  std::vector<bool> done(d, false);
  for (int it = 0; it < max_iter; ++it) {
    int active = 0;
    for (int i = 0; i < d; ++i) {
      if (done[i]) continue;
      const Complex<T> ratio = newton_ratio(c, z[i]);
      if (!std::isfinite(ratio.real()) || !std::isfinite(ratio.imag())) {
        // Critical point of p hit exactly: nudge off it.
        z[i] += Complex<T>(T(1e-7), T(1e-7)) * (T(1) + std::abs(z[i]));
        ++active;
        continue;
      }
      Complex<T> s(0);
      for (int j = 0; j < d; ++j)
        if (j != i) s += T(1) / (z[i] - z[j]);
      const Complex<T> w = ratio / (T(1) - ratio * s);
      z[i] -= w;
      if (std::abs(w) <= T(4) * std::numeric_limits<T>::epsilon() * (T(1) + std::abs(z[i]))) {
        done[i] = true;
      } else {
        ++active;
      }
    }
    if (active == 0) return true;
  }
  return false;
}

// An m-fold root is a simple root of the (m-1)-th derivative, where Newton
// recovers full precision from the cluster mean.
template <typename T>
Complex<T> polish_multiple(const std::vector<Complex<T>>& c, Complex<T> z0, int m, T reach) {
  std::vector<Complex<T>> d(c);
  for (int k = 0; k < m - 1; ++k) {
    for (std::size_t i = 1; i < d.size(); ++i) d[i - 1] = d[i] * T(i);
    d.pop_back();
  }
  if (d.size() < 2) return z0;
  auto value = [&](Complex<T> z) {
    Complex<T> p = d.back(), dp(0);
    for (int i = static_cast<int>(d.size()) - 2; i >= 0; --i) {
      dp = dp * z + p;
      p = p * z + d[i];
    }
    return std::pair<Complex<T>, Complex<T>>(p, dp);
  };
  Complex<T> z = z0;
  for (int it = 0; it < 20; ++it) {
    const auto [p, dp] = value(z);
    if (dp == Complex<T>(0)) break;
    const Complex<T> step = p / dp;
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
    z -= step;
    if (std::abs(step) <= T(2) * std::numeric_limits<T>::epsilon() * (T(1) + std::abs(z))) break;
  }
  return std::abs(z - z0) <= reach ? z : z0;
}

}  // namespace detail

/// All roots of p with multiplicity, by simultaneous Aberth-Ehrlich iteration.
/// Roots closer than `cluster_radius` (relative to max(1,|z|)), or whose
/// Weierstrass inclusion disks overlap, are merged.
/// Exact zero low-order coefficients are factored out as roots at 0.
template <typename T>
std::vector<PolyRoot<T>> roots(const ComplexPolynomial<T>& p, T tol = T(1e-12),
                               T cluster_radius = T(1e-6)) {
  const int deg = p.degree();
  if (deg < 1) throw Error(Errc::InvalidArgument, "polynomial degree must be >= 1");

  const auto& all = p.coefficients();
  int zeros = 0;
  while (all[zeros] == Complex<T>(0)) ++zeros;

  std::vector<Complex<T>> c(all.begin() + zeros, all.end());
  const Complex<T> lead = c.back();
  for (auto& x : c) x /= lead;
  const int d = static_cast<int>(c.size()) - 1;

  std::vector<Complex<T>> z(d);
  if (d > 0) {
    const T radius = std::pow(std::abs(c[0]), T(1) / T(d));
    std::mt19937_64 rng(detail::hash_coefficients(c.data(), c.size() * sizeof(Complex<T>)));
    std::uniform_real_distribution<T> jitter(T(0.7), T(1.3));

    bool ok = false;
    for (int attempt = 0; attempt < 6 && !ok; ++attempt) {
      const T r = attempt == 0 ? radius : radius * jitter(rng);
      const T phase = attempt == 0 ? T(0.4) : T(2) * std::numbers::pi_v<T> * jitter(rng);
      for (int k = 0; k < d; ++k) {
        z[k] = std::polar(r, T(2) * std::numbers::pi_v<T> * T(k) / T(d) + phase);
      }
      detail::aberth(c, z, 500);
      ok = true;
      const ComplexPolynomial<T> monic(c);
      for (const auto& x : z) {
        if (!(std::abs(monic(x)) <= tol * monic.magnitude(x))) ok = false;
      }
    }
    if (!ok) throw Error(Errc::RootFindFailure, "root residuals exceed tolerance after restarts");
  }

  std::vector<Complex<T>> flat(zeros, Complex<T>(0));
  flat.insert(flat.end(), z.begin(), z.end());

  // Weierstrass corrections: the disks |x - z_i| <= d |W_i| cover all roots,
  // so overlapping disks mark approximations of one unresolved multiple root
  // (an m-fold root only resolves to about eps^{1/m}).
  std::vector<T> incl(flat.size(), T(0));
  if (d > 1) {
    const ComplexPolynomial<T> monic(c);
    for (int i = 0; i < d; ++i) {
      Complex<T> prod(1);
      for (int j = 0; j < d; ++j)
        if (j != i) prod *= z[i] - z[j];
      // |p| is only known up to the Horner rounding bound.
      const T err = T(2 * d) * std::numeric_limits<T>::epsilon() * monic.magnitude(z[i]);
      incl[zeros + i] = T(d) * (std::abs(monic(z[i])) + err) / std::abs(prod);
    }
  }

  // Single-linkage clustering.
  const int m = static_cast<int>(flat.size());
  std::vector<int> label(m);
  for (int i = 0; i < m; ++i) label[i] = i;
  auto find = [&](int i) {
    while (label[i] != i) i = label[i] = label[label[i]];
    return i;
  };
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const T scale = std::max({T(1), std::abs(flat[i]), std::abs(flat[j])});
      const T dist = std::abs(flat[i] - flat[j]);
      if (dist <= cluster_radius * scale || dist <= incl[i] + incl[j]) label[find(i)] = find(j);
    }
  }
  std::vector<PolyRoot<T>> out;
  std::vector<int> slot(m, -1);
  for (int i = 0; i < m; ++i) {
    const int r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(out.size());
      out.push_back({Complex<T>(0), 0});
    }
    auto& root = out[slot[r]];
    root.value += flat[i];
    root.multiplicity += 1;
  }
  std::vector<T> spread(out.size(), T(0));
  for (auto& r : out) r.value /= T(r.multiplicity);
  for (int i = 0; i < m; ++i) {
    const int k = slot[find(i)];
    spread[k] = std::max(spread[k], std::abs(flat[i] - out[k].value));
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    auto& r = out[k];
    if (r.multiplicity > 1) {
      const T reach = std::max(cluster_radius * std::max(T(1), std::abs(r.value)), T(2) * spread[k]);
      r.value = detail::polish_multiple(all, r.value, r.multiplicity, reach);
    }
  }
  return out;
}

/// Roots expanded by multiplicity into a flat list of length degree().
template <typename T>
std::vector<Complex<T>> roots_flat(const ComplexPolynomial<T>& p, T tol = T(1e-12),
                                   T cluster_radius = T(1e-6)) {
  std::vector<Complex<T>> out;
  for (const auto& r : roots(p, tol, cluster_radius))
    out.insert(out.end(), r.multiplicity, r.value);
  return out;
}

}  // namespace bicrit

#endif  // BICRIT_POLYROOT_HPP
