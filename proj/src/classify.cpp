#include "bicrit/classify.hpp"

#include <cmath>
#include <numbers>

namespace bicrit {

const char* to_string(Locus l) {
  switch (l) {
    case Locus::Connected: return "Connected";
    case Locus::HyperbolicShift: return "HyperbolicShift";
    case Locus::ParabolicShift: return "ParabolicShift";
    case Locus::Undetermined: return "Undetermined";
  }
  return "Unknown";
}

ParabolicChart parabolic_chart(const BicritMapd& f, const SpherePointd& fixed_point) {
  ParabolicChart ch;
  ch.swapped = !fixed_point.in_finite_chart();
  const BicritMapd g = ch.swapped ? swap_critical(f) : f;
  ch.center = ch.swapped ? fixed_point.den() : fixed_point.num();
  const int n = g.degree();

  // Taylor coefficients of (x+h)^n, then of N/D to third order.
  cd P[4] = {};
  for (int k = 0; k <= 3 && k <= n; ++k) {
    P[k] = binomial(n, k).convert_to<double>() * ipow(ch.center, n - k);
  }
  cd N[4], D[4], Q[4];
  for (int k = 0; k < 4; ++k) {
    N[k] = g.a() * P[k];
    D[k] = g.c() * P[k];
  }
  N[0] += g.b();
  D[0] += g.d();
  for (int k = 0; k < 4; ++k) {
    cd acc = N[k];
    for (int j = 1; j <= k; ++j) acc -= D[j] * Q[k - j];
    Q[k] = acc / D[0];
  }
  ch.A2 = Q[2];
  ch.A3 = Q[3];
  if (std::abs(ch.A2) > 1e-6) {
    ch.petals = 1;
    ch.rotation = -ch.A2;
  } else {
    ch.petals = 2;
    ch.rotation = std::sqrt(-2.0 * ch.A3);
  }
  return ch;
}

std::vector<Target> capture_targets(const BicritMapd& f, const MultiplierSpectrum& s, double parabolic_band) {
  std::vector<Target> out;
  for (const auto& e : s.entries) {
    bool seen = false;
    for (const auto& t : out) seen = seen || approx_equal(t.point, e.fixed_point, 1e-9);
    if (seen) continue;
    if (std::abs(e.multiplier - 1.0) < parabolic_band) {
      out.push_back({e.fixed_point, e.multiplier, true, parabolic_chart(f, e.fixed_point)});
    } else if (std::abs(e.multiplier) < 1.0) {
      out.push_back({e.fixed_point, e.multiplier, false, {}});
    }
  }
  return out;
}

namespace {

enum class Fate { Captured, Escaped, Undetermined };

struct OrbitOutcome {
  Fate fate = Fate::Escaped;
  int target = -1;
  int petal = 0;
  int iterations = 0;
};

// Chordal radius inside which the petal coordinate is evaluated.
constexpr double kChartRadius = 0.05;

OrbitOutcome track(const BicritMapd& f, SpherePointd z, const std::vector<Target>& targets,
                   const ClassifyBudget& budget, int max_iter) {
  const std::size_t nt = targets.size();
  std::vector<double> cur(nt, 1.0), prev(nt, 1.0);
  std::vector<int> streak(nt, 0), pstreak(nt, 0);
  std::vector<cd> prev_w(nt);
  std::vector<bool> has_w(nt, false);
  for (std::size_t j = 0; j < nt; ++j) cur[j] = chordal_distance(z, targets[j].point);

  SpherePointd saved = z;
  long power = 1, lam = 0;

  auto petal_of = [](const ParabolicChart& ch, cd v) {
    if (ch.petals == 1) return 0;
    const double t = std::arg(v) * ch.petals / (2.0 * std::numbers::pi);
    return ((static_cast<int>(std::lround(t)) % ch.petals) + ch.petals) % ch.petals;
  };

  OrbitOutcome out;
  for (int k = 1; k <= max_iter; ++k) {
    z = eval(f, z);
    out.iterations = k;
    bool near = false;
    for (std::size_t j = 0; j < nt; ++j) {
      const Target& t = targets[j];
      prev[j] = cur[j];
      cur[j] = chordal_distance(z, t.point);
      const double d = cur[j];
      if (d < budget.eps) {
        streak[j] = d <= prev[j] ? streak[j] + 1 : 0;
      } else {
        streak[j] = 0;
      }
      if (!t.parabolic) {
        near = near || d < budget.eps;
        if (streak[j] >= budget.contraction_steps) {
          out.fate = Fate::Captured;
          out.target = static_cast<int>(j);
          return out;
        }
        continue;
      }

      if (d >= kChartRadius) {
        has_w[j] = false;
        pstreak[j] = 0;
        continue;
      }
      near = true;
      const ParabolicChart& ch = t.chart;
      const cd x = ch.swapped ? z.den() / z.num() : z.num() / z.den();
      const cd v = ch.rotation * (x - ch.center);
      const cd w = 1.0 / ipow(v, ch.petals);
      if (has_w[j]) {
        const cd step = w - prev_w[j];
        const bool marching = std::abs(step - 1.0) < 0.1 && w.real() > 0.0 &&
                              std::abs(w.imag()) < w.real() && std::abs(w) > 20.0;
        pstreak[j] = marching ? pstreak[j] + 1 : 0;
      }
      prev_w[j] = w;
      has_w[j] = std::isfinite(w.real()) && std::isfinite(w.imag());
      if (pstreak[j] >= budget.parabolic_steps || streak[j] >= budget.parabolic_steps) {
        out.fate = Fate::Captured;
        out.target = static_cast<int>(j);
        out.petal = petal_of(ch, v);
        return out;
      }
    }

    if (!near) {
      if (chordal_distance(z, saved) < 1e-13) {
        out.fate = Fate::Escaped;  // periodic cycle away from the targets
        return out;
      }
      if (++lam == power) {
        saved = z;
        power *= 2;
        lam = 0;
      }
    }
  }

  out.fate = Fate::Escaped;
  for (std::size_t j = 0; j < nt; ++j) {
    if (cur[j] < 1e-2 && cur[j] < prev[j]) {
      out.fate = Fate::Undetermined;
      out.target = static_cast<int>(j);
    }
  }
  return out;
}

int iteration_budget(const std::vector<Target>& targets, const ClassifyBudget& budget) {
  for (const auto& t : targets) {
    if (t.parabolic) return budget.max_iter_parabolic;
  }
  return budget.max_iter_hyperbolic;
}

}  // namespace

OrbitFate orbit_fate(const BicritMapd& f, const SpherePointd& z, const std::vector<Target>& targets,
                     const ClassifyBudget& budget) {
  OrbitFate r;
  if (targets.empty()) return r;
  const OrbitOutcome o = track(f, z, targets, budget, iteration_budget(targets, budget));
  r.iterations = o.iterations;
  if (o.fate == Fate::Captured) {
    r.target = o.target;
    r.petal = o.petal;
  }
  r.undetermined = o.fate == Fate::Undetermined;
  return r;
}

ClassificationResult classify_with_targets(const BicritMapd& f, const std::vector<Target>& targets,
                                           const ClassifyBudget& budget) {
  ClassificationResult r;
  if (targets.empty()) {
    r.locus = Locus::Connected;
    return r;
  }
  const int max_iter = iteration_budget(targets, budget);

  const OrbitOutcome o1 = track(f, SpherePointd::infinity(), targets, budget, max_iter);
  r.iterations_used.first = o1.iterations;
  if (o1.fate == Fate::Escaped) {
    r.locus = Locus::Connected;
    return r;
  }
  const OrbitOutcome o2 = track(f, SpherePointd(cd(0)), targets, budget, max_iter);
  r.iterations_used.second = o2.iterations;

  const bool same = o1.target == o2.target && o1.petal == o2.petal;
  if (o2.fate == Fate::Escaped) {
    r.locus = Locus::Connected;
  } else if (o1.fate == Fate::Captured && o2.fate == Fate::Captured) {
    if (same) {
      const Target& t = targets[o1.target];
      r.locus = t.parabolic ? Locus::ParabolicShift : Locus::HyperbolicShift;
      r.attracting_point = t.point;
      r.slow_rate = std::max(o1.iterations, o2.iterations);
    } else {
      r.locus = Locus::Connected;
    }
  } else {
    // At least one orbit was still creeping toward a target at the budget.
    r.locus = o1.target != o2.target ? Locus::Connected : Locus::Undetermined;
  }
  return r;
}

ClassificationResult classify_map(const BicritMapd& f, const ClassifyBudget& budget) {
  MultiplierSpectrum s;
  try {
    s = multiplier_spectrum(f);
  } catch (const Error&) {
    return {};
  }
  ClassificationResult r = classify_with_targets(f, capture_targets(f, s, budget.parabolic_band), budget);
  r.regime = classify_fixed_regime(s);
  return r;
}

ClassificationResult classify(const ModuliPointd& p, const ClassifyBudget& budget) {
  return classify_map(reconstruct(p), budget);
}

ClassificationResult classify_per1_sample(int n, cd lambda, cd X, const ClassifyBudget& budget) {
  const BicritMapd f = fixed_point_normal_form(n, lambda, X);
  const SpherePointd one(cd(1));
  if (std::abs(lambda - 1.0) < budget.parabolic_band) {
    return classify_with_targets(f, {{one, lambda, true, parabolic_chart(f, one)}}, budget);
  }
  if (std::abs(lambda) < 1.0) return classify_with_targets(f, {{one, lambda, false, {}}}, budget);
  return classify_map(f, budget);
}

}  // namespace bicrit
