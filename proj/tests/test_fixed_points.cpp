#include "doctest.h"

#include <fstream>
#include <numbers>
#include <sstream>

#include "bicrit/fixed_points.hpp"
#include "bicrit/polyroot.hpp"
#include "support.hpp"

using namespace bicrit;
using testing_support::match_distance;
using testing_support::random_complex;
using testing_support::random_map;

namespace {

IntPolynomial X_pow(int k) { return IntPolynomial::monomial(1, k); }

}  // namespace

TEST_CASE("beta") {
  for (int m = 0; m < 12; ++m) CHECK(beta(m, 0) == 1);
  CHECK(beta(4, 1) == 4);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(3, -1) == 0);
}

TEST_CASE("pk_table small degrees") {
  const auto t2 = pk_table(2);
  CHECK(t2[0] == IntPolynomial{1});
  CHECK(t2[1] == IntPolynomial{1, 4});
  CHECK(t2[2] == IntPolynomial{0, -1, 2});
  CHECK(t2[3] == IntPolynomial{0, 1});
  CHECK(t2.to_string() == "1\n1 4\n0 -1 2\n0 1\n");

  const auto t3 = pk_table(3);
  CHECK(t3[4] == IntPolynomial{0, 0, 1});
  CHECK(t3[3] == IntPolynomial{0, 0, -2, 2});
  CHECK(t3[2] == IntPolynomial{1, 4, 9});
  CHECK(t3[1] == IntPolynomial{2, 6});
  CHECK(t3[0] == IntPolynomial{1});

  const auto t5 = pk_table(5);
  CHECK(t5[1] == IntPolynomial{4, 10});
  CHECK(t5[5] == IntPolynomial{0, 0, 0, 0, -4, 2});
  CHECK(t5[6] == IntPolynomial{0, 0, 0, 0, 1});
  CHECK(t5[4] == IntPolynomial{1, 6, 15, 20, 25});
  CHECK_THROWS_AS(pk_table(1), Error);
}

TEST_CASE("pk_table exact identities") {
  for (int n = 2; n <= 10; ++n) {
    const auto t = pk_table(n);
    REQUIRE(static_cast<int>(t.polys.size()) == n + 2);
    IntPolynomial weighted;
    BigInt power = 1;
    for (int k = 0; k <= n + 1; ++k) {
      if (k <= n) {
        CHECK(t[k].degree() <= k);
        CHECK(t[k][k] == beta(2 * n, k));
      }
      CHECK(t[k][0] == binomial(n - 1, k));
      weighted += t[k] * (power * (n - k));
      power *= -n;
    }
    CHECK(weighted.is_zero());
    CHECK(t[n + 1] == X_pow(n - 1));
    CHECK(t[n] == X_pow(n) * BigInt(2) + X_pow(n - 1) * BigInt(1 - n));
    CHECK(t[1] == IntPolynomial{n - 1, 2 * n});
    IntPolynomial pn1 = X_pow(n - 1) * BigInt(n * n);
    for (int j = 0; j <= n - 2; ++j) pn1 += X_pow(j) * binomial(n + 1, j);
    CHECK(t[n - 1] == pn1);
  }
}

TEST_CASE("pk_table matches the golden files") {
  for (int n = 2; n <= 8; ++n) {
    std::ifstream in(std::string(BICRIT_GOLDEN_DIR) + "/pk_n" + std::to_string(n) + ".txt");
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(pk_table(n).to_string() == ss.str());
  }
}

TEST_CASE("per1 examples") {
  for (int n = 2; n <= 6; ++n) {
    const double want = std::pow(n - 1.0, n - 1) / std::pow(double(n), n);
    CHECK(std::abs(per1_Y(n, cd(1), cd(0)) - want) < 1e-14);
  }
  const auto c = per1_polynomial(2, cd(1));
  CHECK(std::abs(c[0] - 0.25) < 1e-15);
  CHECK(std::abs(c[1] - 5.0) < 1e-14);
  CHECK(std::abs(c[2] + 2.0) == 0.0);
  CHECK(std::abs(per1_Y(2, cd(2), cd(1)) - 4.0) < 1e-14);
  CHECK_THROWS_AS(per1_Y(2, cd(0), cd(1)), Error);

  std::mt19937_64 rng(41);
  for (int n = 2; n <= 7; ++n) {
    const cd lambda = random_complex(rng) + cd(0.1);
    const auto lf = per1_leading_form(n, lambda);
    const auto p = per1_polynomial(n, lambda);
    CHECK(p[n] == cd(-2));
    CHECK(lf.c_n == cd(-2));
    CHECK(std::abs(lf.c_n_minus_1 - p[n - 1]) < 1e-10 * std::max(1.0, std::abs(p[n - 1])));
    CHECK(std::abs(lf.c_0 - p[0]) < 1e-10 * std::max(1.0, std::abs(p[0])));
    CHECK(std::abs(per1_leading_form(n, cd(n)).c_0) == 0.0);
  }
  CHECK(std::abs(per1_leading_form(2, cd(1)).c_n_minus_1 - 5.0) < 1e-15);
}

TEST_CASE("Per1 intersection counts") {
  CHECK(per1_intersection_count(4, cd(2), cd(3)) == 3);
  CHECK(per1_intersection_count(4, cd(2), cd(0.5)) <= 2);
  CHECK_THROWS_AS(per1_intersection_count(3, cd(2), cd(2)), Error);
  CHECK_THROWS_AS(per1_intersection_count(3, cd(0), cd(2)), Error);

  // Root-solve cross-check: the difference polynomial, trimmed of its
  // vanishing leading terms, has as many roots as the reported count.
  std::mt19937_64 rng(46);
  for (int n = 2; n <= 6; ++n) {
    for (const bool reciprocal : {false, true}) {
      const cd lambda = random_complex(rng) + cd(0.2);
      const cd lambda_prime = reciprocal ? 1.0 / lambda : random_complex(rng) + cd(0.2);
      const auto p = per1_polynomial(n, lambda), q = per1_polynomial(n, lambda_prime);
      std::vector<cd> diff;
      for (int j = 0; j <= n; ++j) diff.push_back(p[j] - q[j]);
      while (std::abs(diff.back()) < 1e-12 * 10.0) diff.pop_back();
      const int solved = diff.size() > 1 ? static_cast<int>(roots_flat(ComplexPolynomiald(diff)).size()) : 0;
      CHECK(solved == per1_intersection_count(n, lambda, lambda_prime));
      if (reciprocal) CHECK(solved < n - 1);
      else CHECK(solved == n - 1);
    }
  }
  CHECK(per1_intersection_count(2, cd(2), cd(0.5)) == 0);
}

TEST_CASE("multiplier_polynomial examples") {
  auto m = multiplier_polynomial(ModuliPointd{2, cd(0), cd(0)});
  CHECK(m == std::vector<cd>{cd(0), cd(0), cd(-1), cd(1)});
  m = multiplier_polynomial(ModuliPointd{2, cd(1), cd(9)});
  CHECK(m == std::vector<cd>{cd(-1), cd(10), cd(-5), cd(1)});

  const cd b(0.4, -0.3);
  for (int n = 2; n <= 5; ++n) {
    const ModuliPointd p{n, cd(0), ipow(b, n - 1)};
    auto mus = roots_flat(ComplexPolynomiald(multiplier_polynomial(p)));
    const auto e = elementary_symmetric(mus);
    for (int k = 0; k <= n + 1; ++k) {
      const cd want = k == n ? ipow(b, n - 1) : cd(binomial(n - 1, k).convert_to<double>());
      CHECK(std::abs(e[k] - want) < 1e-8);
    }
  }
}

TEST_CASE("multiplier_spectrum examples") {
  for (int n = 2; n <= 5; ++n) {
    auto lambdas = multiplier_spectrum(BicritMapd(n, 1, 0, 0, 1)).multipliers();
    std::vector<cd> want(n + 1, cd(n));
    want[0] = want[1] = 0;
    CHECK(match_distance(lambdas, want) < 1e-12);
  }
  const cd b(0.2, 0.5);
  const auto s = multiplier_spectrum(BicritMapd(2, 1, b, 0, 1));
  std::vector<cd> finite;
  for (const auto& e : s.entries)
    if (!e.fixed_point.is_infinity()) finite.push_back(e.multiplier);
  REQUIRE(finite.size() == 2);
  CHECK(std::abs(finite[0] + finite[1] - 2.0) < 1e-12);
  CHECK(std::abs(finite[0] * finite[1] - 4.0 * b) < 1e-12);

  const auto inv = multiplier_spectrum(BicritMapd(2, 0, 1, 1, 0));
  REQUIRE(inv.entries.size() == 3);
  for (const auto& e : inv.entries) {
    CHECK(std::abs(e.multiplier + 2.0) < 1e-12);
    CHECK(std::abs(std::abs(e.fixed_point.affine()) - 1.0) < 1e-12);
  }
  CHECK(std::abs(sigma(ModuliPointd{2, cd(-1), cd(0)}, 1) + 6.0) < 1e-14);
}

TEST_CASE("sigma") {
  const ModuliPointd p{2, cd(1), cd(9)};
  CHECK(sigma(p, 0) == cd(1));
  CHECK(std::abs(sigma(p, 1) - 10.0) < 1e-14);
  CHECK(std::abs(sigma(p, 2) - 40.0) < 1e-13);
  CHECK(std::abs(sigma(p, 3) - 8.0) < 1e-14);
  CHECK_THROWS_AS(sigma(p, 4), Error);
  CHECK_THROWS_AS(sigma(p, -1), Error);

  std::mt19937_64 rng(42);
  for (int n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto f = random_map(rng, n);
      const auto p = moduli_point(f);
      const auto e = elementary_symmetric(multiplier_spectrum(f).multipliers());
      for (int k = 0; k <= n + 1; ++k) {
        const cd want = sigma(p, k);
        CHECK(std::abs(e[k] - want) <= 1e-6 * std::max(1.0, std::abs(want)));
      }
    }
  }
}

TEST_CASE("spectrum duality and Per1 consistency") {
  std::mt19937_64 rng(43);
  for (int n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 100; ++trial) {
      const ModuliPointd p{n, random_complex(rng), random_complex(rng)};
      auto lambdas = multiplier_spectrum(reconstruct(p)).multipliers();
      for (auto& l : lambdas) l /= double(n);
      const auto mus = roots_flat(ComplexPolynomiald(multiplier_polynomial(p)));
      CHECK(match_distance(lambdas, mus) < 1e-7);
    }
    for (int trial = 0; trial < 20; ++trial) {
      const cd lambda = random_complex(rng) + cd(0.05), X = random_complex(rng);
      const auto lambdas = multiplier_spectrum(reconstruct(ModuliPointd{n, X, per1_Y(n, lambda, X)})).multipliers();
      double best = 1e300;
      for (const auto& l : lambdas) best = std::min(best, std::abs(l - lambda));
      CHECK(best < 1e-7);
    }
  }
}

TEST_CASE("fixed point indices") {
  CHECK(fixed_point_index(cd(0)) == cd(1));
  CHECK(fixed_point_index(cd(2)) == cd(-1));
  CHECK_THROWS_AS(fixed_point_index(cd(1)), Error);
  CHECK(std::abs(index_sum(multiplier_spectrum(BicritMapd(2, 1, 0, 0, 1))) - 1.0) < 1e-14);

  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = multiplier_spectrum(random_map(rng, 2 + trial % 5));
    double gap = 1e300;
    for (const auto& e : s.entries) gap = std::min(gap, std::abs(1.0 - e.multiplier));
    if (gap > 1e-3) CHECK(std::abs(index_sum(s) - 1.0) < 1e-8);
  }
}

TEST_CASE("fixed-point regimes") {
  CHECK(classify_fixed_regime(multiplier_spectrum(BicritMapd(2, 1, 0, 0, 1))) == FixedRegime::PrincipalHyperbolic);
  CHECK(classify_fixed_regime(multiplier_spectrum(BicritMapd(2, 1, 1, 0, 1))) == FixedRegime::PolynomialLike);
  for (int n = 2; n <= 5; ++n) {
    const cd kappa = std::polar(1.0, 2 * std::numbers::pi / n);
    const auto s = multiplier_spectrum(BicritMapd(n, kappa, 1.0 - kappa, 1, 0));
    CHECK(classify_fixed_regime(s) == FixedRegime::EssentiallyNonPolynomialLike);
  }
  CHECK(classify_fixed_regime(multiplier_spectrum(parabolic_normal_form(2, cd(3)))) == FixedRegime::IndifferentPresent);

  CHECK_FALSE(cnp_index_test_quadratic(multiplier_spectrum(BicritMapd(2, 1, 0, 0, 1))));
  CHECK(cnp_index_test_quadratic(multiplier_spectrum(BicritMapd(2, -1, 2, 1, 0))));
  CHECK_THROWS_AS(cnp_index_test_quadratic(multiplier_spectrum(BicritMapd(3, 1, 0, 0, 1))), Error);
  CHECK_THROWS_AS(cnp_index_test_quadratic(multiplier_spectrum(parabolic_normal_form(2, cd(3)))), Error);
}

TEST_CASE("marked fixed coordinate") {
  std::mt19937_64 rng(45);
  const ModuliPointd zero_x{3, cd(0), cd(0.7, 0.2)};
  for (const auto& mu : roots_flat(ComplexPolynomiald(multiplier_polynomial(zero_x)))) {
    if (std::abs(mu) > 1e-6) CHECK(std::abs(marked_fixed_coordinate(zero_x, 3.0 * mu)) < 1e-9);
  }
  const ModuliPointd p{2, cd(1), cd(9)};
  for (const auto& mu : roots_flat(ComplexPolynomiald(multiplier_polynomial(p)))) {
    CHECK(std::abs(mu * marked_fixed_coordinate(p, 2.0 * mu) - 1.0) < 1e-9);
  }
  CHECK_THROWS_AS(marked_fixed_coordinate(p, cd(0.123)), Error);
  CHECK_THROWS_AS(marked_fixed_coordinate(p, cd(0)), Error);
  for (int n = 2; n <= 6; ++n) {
    const ModuliPointd q{n, random_complex(rng), random_complex(rng)};
    for (const auto& mu : roots_flat(ComplexPolynomiald(multiplier_polynomial(q)))) {
      const cd lhs = mu * marked_fixed_coordinate(q, double(n) * mu);
      CHECK(std::abs(lhs - ipow(q.X, n - 1)) < 1e-8 * std::max(1.0, std::abs(ipow(q.X, n - 1))));
    }
  }
}
