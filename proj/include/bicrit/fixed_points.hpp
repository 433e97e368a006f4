#ifndef BICRIT_FIXED_POINTS_HPP
#define BICRIT_FIXED_POINTS_HPP

#include <string>
#include <vector>

#include "bicrit/int_polynomial.hpp"
#include "bicrit/invariants.hpp"
#include "bicrit/map.hpp"

namespace bicrit {

/// The integer polynomials P_0(X), ..., P_{n+1}(X) for one degree n. The
/// multiplier polynomial of a class (X, Y) is
///   mu^{n+1} - P_1 mu^n + P_2 mu^{n-1} - ... -+ (P_n + Y) mu +- P_{n+1},  mu = lambda/n.
struct PkTable {
  int n = 0;
  std::vector<IntPolynomial> polys;

  const IntPolynomial& operator[](int k) const { return polys.at(k); }

  /// One polynomial per line, decimal coefficients lowest degree first.
  std::string to_string() const;
};

PkTable pk_table(int n);

/// Shared per-degree table, built once on first use; safe for concurrent readers.
const PkTable& pk_table_cached(int n);

/// Coefficients (lowest first, in X) of the degree-n polynomial whose graph
/// Y = Y_lambda(X) is the curve Per_1(lambda).
std::vector<cd> per1_polynomial(int n, cd lambda);

cd per1_Y(int n, cd lambda, cd X);

struct Per1LeadingForm {
  cd c_n;
  cd c_n_minus_1;
  cd c_0;
};

/// Closed forms: c_n = -2, c_{n-1} = n(lambda + 1/lambda + 1) - 1,
/// c_0 = lambda (n - lambda)^{n-1} / n^n.
Per1LeadingForm per1_leading_form(int n, cd lambda);

/// Number of intersections (with multiplicity) of Per_1(lambda) and
/// Per_1(lambda') in the finite X-plane: the degree of the difference
/// polynomial after dropping coefficients below 1e-12 of its scale.
int per1_intersection_count(int n, cd lambda, cd lambda_prime);

/// Coefficients of the monic multiplier polynomial in mu, lowest first
/// (length n+2).
std::vector<cd> multiplier_polynomial(const ModuliPointd& p);

struct SpectrumEntry {
  SpherePointd fixed_point;
  cd multiplier;
};

struct MultiplierSpectrum {
  int n = 0;
  std::vector<SpectrumEntry> entries;  // n+1 entries, repeated by multiplicity

  std::vector<cd> multipliers() const;
};

/// Fixed points from c z^{n+1} - a z^n + d z - b = 0 (homogeneously, so
/// infinity is included) and their multipliers.
MultiplierSpectrum multiplier_spectrum(const BicritMapd& f);

/// sigma_k = n^k P_k(X), except sigma_n = n^n (P_n(X) + Y).
cd sigma(const ModuliPointd& p, int k);

/// e_0, ..., e_m of the values.
std::vector<cd> elementary_symmetric(const std::vector<cd>& values);

cd fixed_point_index(cd lambda);

/// Sum of 1/(1 - lambda_j) over the spectrum.
cd index_sum(const MultiplierSpectrum& s);

enum class FixedRegime { PrincipalHyperbolic, PolynomialLike, EssentiallyNonPolynomialLike, IndifferentPresent };

const char* to_string(FixedRegime r);

/// Number of attracting fixed points decides the regime; any multiplier with
/// ||lambda| - 1| < band gives IndifferentPresent.
FixedRegime classify_fixed_regime(const MultiplierSpectrum& s, double band = 1e-9);

/// Quadratic test 0 < Re(I_j) < 1/2 for all three indices.
bool cnp_index_test_quadratic(const MultiplierSpectrum& s);

/// Y_mu = Y + P_n(X) - mu P_{n-1}(X) + ... + (-mu)^n P_0(X), which satisfies
/// mu Y_mu = X^{n-1} when mu = lambda/n is a root of the multiplier polynomial.
cd marked_fixed_coordinate(const ModuliPointd& p, cd lambda);

}  // namespace bicrit

#endif  // BICRIT_FIXED_POINTS_HPP
