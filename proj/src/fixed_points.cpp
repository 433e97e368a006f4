#include <algorithm>
#include <cmath>

#include "bicrit/fixed_points.hpp"
#include "bicrit/polyroot.hpp"

namespace bicrit {

std::vector<cd> per1_polynomial(int n, cd lambda) {
  if (lambda == cd(0)) throw Error(Errc::ZeroMultiplier, "lambda = 0");
  const PkTable& t = pk_table_cached(n);
  const cd mu = lambda / double(n);
  std::vector<cd> out(n + 1, cd(0));
  for (int k = 0; k <= n + 1; ++k) {
    // Y = sum_k (-1)^{n+1-k} mu^{n-k} P_k(X); only P_{n+1} carries 1/mu.
    const cd w = (k == n + 1 ? 1.0 / mu : ipow(mu, n - k)) * ((n + 1 - k) % 2 ? -1.0 : 1.0);
    const auto& c = t[k].coefficients();
    for (std::size_t j = 0; j < c.size(); ++j) out[j] += w * c[j].convert_to<double>();
  }
  return out;
}

cd per1_Y(int n, cd lambda, cd X) {
  const auto c = per1_polynomial(n, lambda);
  cd acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * X + *it;
  return acc;
}

Per1LeadingForm per1_leading_form(int n, cd lambda) {
  if (lambda == cd(0)) throw Error(Errc::ZeroMultiplier, "lambda = 0");
  const double nn = n;
  return {cd(-2.0), nn * (lambda + 1.0 / lambda + 1.0) - 1.0,
          lambda * ipow(nn - lambda, n - 1) / std::pow(nn, n)};
}

int per1_intersection_count(int n, cd lambda, cd lambda_prime) {
  if (lambda == lambda_prime) throw Error(Errc::EqualMultipliers, "lambda = lambda'");
  if (lambda * lambda_prime == cd(0)) throw Error(Errc::ZeroProduct, "lambda * lambda' = 0");
  const auto p = per1_polynomial(n, lambda);
  const auto q = per1_polynomial(n, lambda_prime);
  std::vector<cd> diff(n + 1);
  double scale = 0.0;
  for (int j = 0; j <= n; ++j) {
    diff[j] = p[j] - q[j];
    scale = std::max({scale, std::abs(p[j]), std::abs(q[j])});
  }
  int deg = n;
  while (deg >= 0 && std::abs(diff[deg]) <= 1e-12 * scale) --deg;
  return std::max(deg, 0);
}

std::vector<cd> multiplier_polynomial(const ModuliPointd& p) {
  const int n = p.n;
  const PkTable& t = pk_table_cached(n);
  std::vector<cd> out(n + 2);
  for (int k = 0; k <= n + 1; ++k) {
    cd q = t[k](p.X);
    if (k == n) q += p.Y;
    out[n + 1 - k] = k % 2 ? -q : q;
  }
  return out;
}

std::vector<cd> MultiplierSpectrum::multipliers() const {
  std::vector<cd> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.multiplier);
  return out;
}

MultiplierSpectrum multiplier_spectrum(const BicritMapd& f) {
  const int n = f.degree();
  // Coefficient of z0^k z1^{n+1-k} in z0 (c z0^n + d z1^n) - z1 (a z0^n + b z1^n).
  std::vector<cd> h(n + 2, cd(0));
  h[0] -= f.b();
  h[1] += f.d();
  h[n] -= f.a();
  h[n + 1] += f.c();

  int lo = 0;
  while (h[lo] == cd(0)) ++lo;
  int hi = n + 1;
  while (h[hi] == cd(0)) --hi;

  MultiplierSpectrum s;
  s.n = n;
  auto push = [&](const SpherePointd& z, int mult) {
    const cd lambda = derivative_in_chart(f, z);
    for (int i = 0; i < mult; ++i) s.entries.push_back({z, lambda});
  };
  if (lo > 0) push(SpherePointd(cd(0)), lo);
  if (hi < n + 1) push(SpherePointd::infinity(), n + 1 - hi);
  if (hi > lo) {
    ComplexPolynomiald mid(std::vector<cd>(h.begin() + lo, h.begin() + hi + 1));
    for (const auto& r : roots(mid)) push(SpherePointd(r.value), r.multiplicity);
  }
  return s;
}

cd sigma(const ModuliPointd& p, int k) {
  if (k < 0 || k > p.n + 1) throw Error(Errc::IndexOutOfRange, "k must be in [0, n+1]");
  cd v = pk_table_cached(p.n)[k](p.X);
  if (k == p.n) v += p.Y;
  return std::pow(double(p.n), k) * v;
}

std::vector<cd> elementary_symmetric(const std::vector<cd>& values) {
  std::vector<cd> e(values.size() + 1, cd(0));
  e[0] = 1.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t k = i + 1; k >= 1; --k) e[k] += e[k - 1] * values[i];
  return e;
}

cd fixed_point_index(cd lambda) {
  if (lambda == cd(1)) throw Error(Errc::ParabolicMultiplier, "lambda = 1");
  return 1.0 / (1.0 - lambda);
}

cd index_sum(const MultiplierSpectrum& s) {
  cd acc(0);
  for (const auto& e : s.entries) acc += fixed_point_index(e.multiplier);
  return acc;
}

const char* to_string(FixedRegime r) {
  switch (r) {
    case FixedRegime::PrincipalHyperbolic: return "PrincipalHyperbolic";
    case FixedRegime::PolynomialLike: return "PolynomialLike";
    case FixedRegime::EssentiallyNonPolynomialLike: return "EssentiallyNonPolynomialLike";
    case FixedRegime::IndifferentPresent: return "IndifferentPresent";
  }
  return "Unknown";
}

FixedRegime classify_fixed_regime(const MultiplierSpectrum& s, double band) {
  int attracting = 0;
  for (const auto& e : s.entries) {
    const double r = std::abs(e.multiplier);
    if (std::abs(r - 1.0) < band) return FixedRegime::IndifferentPresent;
    if (r < 1.0) ++attracting;
  }
  if (attracting >= 2) return FixedRegime::PrincipalHyperbolic;
  if (attracting == 1) return FixedRegime::PolynomialLike;
  return FixedRegime::EssentiallyNonPolynomialLike;
}

bool cnp_index_test_quadratic(const MultiplierSpectrum& s) {
  if (s.n != 2) throw Error(Errc::WrongDegree, "quadratic maps only");
  cd total(0);
  bool inside = true;
  for (const auto& e : s.entries) {
    if (std::abs(e.multiplier - 1.0) < 1e-8) throw Error(Errc::ParabolicMultiplier, "lambda = 1");
    const cd idx = 1.0 / (1.0 - e.multiplier);
    total += idx;
    inside = inside && idx.real() > 0.0 && idx.real() < 0.5;
  }
  if (std::abs(total - 1.0) > 1e-6) {
    throw Error(Errc::InvalidArgument, "fixed-point indices do not sum to 1");
  }
  return inside;
}

cd marked_fixed_coordinate(const ModuliPointd& p, cd lambda) {
  if (lambda == cd(0)) throw Error(Errc::ZeroMultiplier, "lambda = 0");
  const int n = p.n;
  const cd mu = lambda / double(n);
  const ComplexPolynomiald mp(multiplier_polynomial(p));
  if (std::abs(mp(mu)) > 1e-8 * mp.magnitude(mu)) {
    throw Error(Errc::InconsistentMultiplier, "lambda/n is not a root of the multiplier polynomial");
  }
  const PkTable& t = pk_table_cached(n);
  cd acc = p.Y;
  cd w(1);
  for (int j = 0; j <= n; ++j) {
    acc += w * t[n - j](p.X);
    w *= -mu;
  }
  return acc;
}

}  // namespace bicrit
