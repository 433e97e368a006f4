#include "bicrit/parabolic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "bicrit/int_polynomial.hpp"

namespace bicrit {

namespace {

void require_alpha(cd alpha) {
  if (alpha == cd(0)) throw Error(Errc::ZeroAlpha, "alpha = 0");
}

double binom(int p, int q) { return binomial(p, q).convert_to<double>(); }

}  // namespace

SpherePointd w_coordinate(cd alpha, const SpherePointd& z) {
  require_alpha(alpha);
  return SpherePointd(2.0 * z.den(), alpha * (z.num() - z.den()));
}

SpherePointd z_from_w(cd alpha, const SpherePointd& w) {
  require_alpha(alpha);
  return SpherePointd(alpha * w.num() + 2.0 * w.den(), alpha * w.num());
}

std::pair<cd, cd> critical_w_values(int n, cd alpha) {
  require_alpha(alpha);
  return {1.0 - double(n + 1) / alpha, 1.0 + double(n - 1) / alpha};
}

cd parabolic_w_map(int n, cd alpha, cd w) {
  require_alpha(alpha);
  const cd shift = (double(n - 1) + alpha) / alpha;  // c/alpha = F(0)
  if (w == cd(0)) return shift;
  // With z = 1 + h, h = 2/(alpha w): f(z) - 1 = 2 h S(h) / (c z^n + d) where
  // z^n - 1 = h S(h), S(h) = sum_k C(n,k) h^(k-1); hence F = c/alpha + n w / S(h).
  const cd h = 2.0 / (alpha * w);
  cd S = 0;
  for (int k = n; k >= 1; --k) S = S * h + binom(n, k);
  return shift + double(n) * w / S;
}

cd w_map_kappa(int n, cd alpha) {
  require_alpha(alpha);
  return double(n * n - 1) / (3.0 * alpha * alpha);
}

std::vector<cd> fatou_differences(int n, cd alpha, int count) {
  auto [w1, w2] = critical_w_values(n, alpha);
  std::vector<cd> d;
  d.reserve(count);
  for (int m = 0; m < count; ++m) {
    d.push_back(w2 - w1);
    w1 = parabolic_w_map(n, alpha, w1);
    w2 = parabolic_w_map(n, alpha, w2);
  }
  return d;
}

FatouResult fatou_phi(int n, cd alpha, double tol, int max_m) {
  require_alpha(alpha);
  if (max_m < 2) throw Error(Errc::InvalidArgument, "max_m must be >= 2");
  const cd kappa = w_map_kappa(n, alpha);
  auto [w1, w2] = critical_w_values(n, alpha);

  // An orbit is in the marching regime once |w| > 10 and steps are close to +1;
  // after that it must stay there.
  auto marching = [](cd w, cd next) {
    return std::abs(next - w - 1.0) < 0.1 && next.real() > 0.0;
  };
  bool in1 = false, in2 = false;
  auto corrected = [&](cd a, cd b) { return (b - a) - kappa * std::log(b / a); };

  FatouResult r;
  cd prev = 0, half = 0;
  bool have_prev = false;
  int start = -1;
  for (int m = 1; m <= max_m; ++m) {
    const cd n1 = parabolic_w_map(n, alpha, w1);
    const cd n2 = parabolic_w_map(n, alpha, w2);
    const bool ok1 = marching(w1, n1), ok2 = marching(w2, n2);
    if ((in1 && !ok1) || (in2 && !ok2)) {
      throw Error(Errc::NotInParabolicBasin, "critical w-orbit left the marching regime");
    }
    in1 = in1 || (ok1 && std::abs(n1) > 10.0);
    in2 = in2 || (ok2 && std::abs(n2) > 10.0);
    w1 = n1;
    w2 = n2;
    r.iterations = m;
    if (!(in1 && in2)) continue;
    if (start < 0) start = m;

    const cd d = corrected(w1, w2);
    if ((m - start) == (max_m - start) / 2) half = d;
    if (have_prev) {
      r.error_estimate = std::abs(d - prev);
      if (r.error_estimate < tol) {
        r.difference = d;
        r.phi = d * d;
        return r;
      }
    }
    prev = d;
    have_prev = true;
  }
  if (start < 0) throw Error(Errc::NotInParabolicBasin, "critical w-orbits never reached the petal");

  // The corrected sequence has an O(1/m^2) tail; one Richardson step on (m/2, m).
  const cd extrapolated = (4.0 * prev - half) / 3.0;
  r.extrapolated = true;
  r.error_estimate = std::abs(extrapolated - prev);
  if (!(r.error_estimate < tol)) {
    throw Error(Errc::NoConvergence, "Fatou difference did not converge within max_m");
  }
  r.difference = extrapolated;
  r.phi = extrapolated * extrapolated;
  return r;
}

cd phi_asymptotic(int n, cd X) {
  if (X == cd(0)) throw Error(Errc::ZeroX, "X = 0");
  return -double(n) / X;
}

cd alpha_from_X(int n, cd X) {
  return std::sqrt(double((n - 1) * (n - 1)) - 4.0 * n * X);
}

ParabolicPolynomial parabolic_polynomial(int n) {
  if (n < 2) throw Error(Errc::InvalidArgument, "degree must be >= 2");
  ParabolicPolynomial p;
  p.n = n;
  p.fixed_point = std::pow(1.0 / n, 1.0 / (n - 1));
  p.b = double(n - 1) / std::pow(double(n), double(n) / (n - 1));
  return p;
}

PetalCoordinate::PetalCoordinate(int n, int depth_steps) : p_(parabolic_polynomial(n)), steps_(depth_steps) {
  const double zh = p_.fixed_point;
  // f(zh + u) = zh + u + A2 u^2 + A3 u^3 + A4 u^4 + ...
  taylor_.assign(n + 1, 0.0);
  for (int k = 2; k <= n; ++k) taylor_[k] = binom(n, k) * std::pow(zh, n - k);
  A2_ = taylor_[2];
  const double A3 = n >= 3 ? taylor_[3] : 0.0;
  const double A4 = n >= 4 ? taylor_[4] : 0.0;
  const double r = A3 / (A2_ * A2_), q = A4 / (A2_ * A2_ * A2_);
  kappa_ = 1.0 - r;
  const double e = 1.0 + q - 2.0 * r;
  c1_ = e - kappa_ * kappa_ + kappa_ / 2.0;
}

cd PetalCoordinate::map(cd z) const { return ipow(z, p_.n) + p_.b; }

cd PetalCoordinate::pullback(cd z) const {
  const cd q = z - p_.b;
  return p_.n == 2 ? std::sqrt(q) : std::pow(q, 1.0 / p_.n);
}

cd PetalCoordinate::chart(cd z) const { return -1.0 / (A2_ * (z - p_.fixed_point)); }

cd PetalCoordinate::chart_inverse(cd w) const { return p_.fixed_point - 1.0 / (A2_ * w); }

cd PetalCoordinate::asymptotic(cd w) const { return w - kappa_ * std::log(w) + c1_ / w; }

// Iteration in u = z - zh: u -> u (1 + A2 u + A3 u^2 + ...), free of the
// cancellation in z^n + b - zh near the parabolic point.
cd PetalCoordinate::step_u(cd u) const {
  cd P = 0;
  for (int k = p_.n; k >= 2; --k) P = P * u + taylor_[k];
  return u + u * u * P;
}

cd PetalCoordinate::unstep_u(cd v) const {
  if (std::abs(v) > 0.05) return pullback(p_.fixed_point + v) - p_.fixed_point;
  cd u = v;
  for (int it = 0; it < 30; ++it) {
    cd g = 0, dg = 0;
    for (int k = p_.n; k >= 2; --k) {
      dg = dg * u + double(k) * taylor_[k];
      g = g * u + taylor_[k];
    }
    // g(u) = u + u^2 G(u), g'(u) = 1 + u G'(u) with the sums above.
    const cd val = u + u * u * g - v;
    const cd der = 1.0 + u * dg;
    const cd step = val / der;
    u -= step;
    if (std::abs(step) <= 1e-17 * std::abs(u)) break;
  }
  return u;
}

cd PetalCoordinate::phi(cd z) const {
  cd u = z - p_.fixed_point;
  for (int m = 0; m < steps_; ++m) {
    u = step_u(u);
    if (!(std::abs(u) < 4.0)) throw Error(Errc::NotInParabolicBasin, "orbit escapes");
  }
  const cd w = -1.0 / (A2_ * u);
  if (!(w.real() > 0.25 * steps_)) throw Error(Errc::NotInParabolicBasin, "orbit is not in the petal");
  return asymptotic(w) - double(steps_);
}

cd PetalCoordinate::phi_inverse(cd W) const {
  const cd target = W + double(steps_);
  cd w = target + kappa_ * std::log(target);
  for (int it = 0; it < 50; ++it) {
    const cd g = asymptotic(w) - target;
    const cd dg = 1.0 - kappa_ / w - c1_ / (w * w);
    const cd step = g / dg;
    w -= step;
    if (std::abs(step) <= 1e-15 * std::abs(w)) break;
  }
  cd u = -1.0 / (A2_ * w);
  for (int m = 0; m < steps_; ++m) u = unstep_u(u);
  return p_.fixed_point + u;
}

namespace {

// Drops points while keeping every gap below `spacing`.
PetalCurve decimate(const PetalCurve& c, double spacing) {
  PetalCurve out;
  const std::size_t N = c.points.size();
  for (std::size_t i = 0; i < N; ++i) {
    const bool last = i + 1 == N;
    if (i != 0 && !last && std::abs(c.points[i + 1] - out.points.back()) <= spacing) continue;
    out.points.push_back(c.points[i]);
    if (!c.parent.empty()) out.parent.push_back(c.parent[i]);
  }
  return out;
}

}  // namespace

PetalFamily petal_family(int n, int depth, double spacing, std::size_t max_points) {
  if (depth < 0) throw Error(Errc::InvalidArgument, "depth must be >= 0");
  if (!(spacing > 0)) throw Error(Errc::InvalidArgument, "spacing must be positive");
  const PetalCoordinate pc(n);
  PetalFamily fam;
  fam.poly = pc.polynomial();
  const double zh = fam.poly.fixed_point;
  fam.critical_phi = pc.phi(cd(0));
  const double x0 = fam.critical_phi.real();

  // Curve 0: phi^{-1}(x0 + i t), t = tan(pi (u - 1/2)), closed through the parabolic point.
  const double half = spacing / 2;
  auto point = [&](double u) { return pc.phi_inverse(cd(x0, std::tan(std::numbers::pi * (u - 0.5)))); };
  const double A2 = binom(n, 2) * std::pow(zh, n - 2);
  const double delta = half * A2 / (2 * std::numbers::pi);
  std::vector<std::pair<double, cd>> s;
  const int base = 512;
  for (int i = 0; i <= base; ++i) {
    const double u = delta + (1 - 2 * delta) * i / base;
    s.emplace_back(u, point(u));
  }
  for (int pass = 0; pass < 40; ++pass) {
    std::vector<std::pair<double, cd>> next;
    bool refined = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
      next.push_back(s[i]);
      if (i + 1 < s.size() && std::abs(s[i + 1].second - s[i].second) > half) {
        const double um = 0.5 * (s[i].first + s[i + 1].first);
        next.emplace_back(um, point(um));
        refined = true;
      }
    }
    s.swap(next);
    if (!refined) break;
    if (s.size() > max_points) throw Error(Errc::DepthBudget, "curve 0 sampling exceeds the point budget");
  }
  PetalCurve c0;
  c0.points.push_back(cd(zh));
  for (const auto& [u, z] : s) c0.points.push_back(z);
  fam.curves.push_back(decimate(c0, half));

  const cd omega = std::polar(1.0, 2 * std::numbers::pi / n);
  for (int k = 1; k <= depth; ++k) {
    const auto& prev = fam.curves.back().points;
    const std::size_t N = prev.size();
    if (N * n > max_points) throw Error(Errc::DepthBudget, "petal curve exceeds the point budget");
    PetalCurve c;
    cd z = pc.pullback(prev[0]);
    // Nearest root of z^n = p - b to the previous lifted point.
    auto lift = [&](cd p, cd near) {
      cd r = pc.pullback(p), best = r;
      for (int j = 1; j < n; ++j) {
        r *= omega;
        if (std::abs(r - near) < std::abs(best - near)) best = r;
      }
      return best;
    };
    const cd start = z;
    for (int sheet = 0; sheet < n; ++sheet) {
      for (std::size_t i = 0; i < N; ++i) {
        if (sheet != 0 || i != 0) z = lift(prev[i], z);
        c.points.push_back(z);
        c.parent.push_back(static_cast<int>(i));
      }
    }
    if (std::abs(lift(prev[0], z) - start) > spacing) {
      throw Error(Errc::DepthBudget, "preimage curve failed to close");
    }
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      if (std::abs(c.points[(i + 1) % c.points.size()] - c.points[i]) > spacing) {
        throw Error(Errc::DepthBudget, "preimage curve has a gap above the spacing");
      }
    }
    fam.curves.push_back(decimate(c, half));
  }
  return fam;
}

std::string petal_csv(const PetalFamily& fam) {
  std::ostringstream os;
  os.precision(17);
  os << "curve_index,re,im\n";
  for (std::size_t k = 0; k < fam.curves.size(); ++k) {
    for (const cd& z : fam.curves[k].points) os << k << ',' << z.real() << ',' << z.imag() << '\n';
  }
  return os.str();
}

int winding_number(const std::vector<cd>& curve, cd z) {
  double total = 0;
  const std::size_t N = curve.size();
  for (std::size_t i = 0; i < N; ++i) {
    total += std::arg((curve[(i + 1) % N] - z) / (curve[i] - z));
  }
  return static_cast<int>(std::lround(total / (2 * std::numbers::pi)));
}

}  // namespace bicrit
