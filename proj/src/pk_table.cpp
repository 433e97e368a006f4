#include <map>
#include <memory>
#include <mutex>

#include "bicrit/fixed_points.hpp"

namespace bicrit {

namespace {

// Polynomial in (mu, X), indexed by the power of mu.
using Bivariate = std::vector<IntPolynomial>;

void add_scaled(Bivariate& acc, const Bivariate& term, const BigInt& s) {
  if (term.size() > acc.size()) acc.resize(term.size());
  for (std::size_t i = 0; i < term.size(); ++i) acc[i] += term[i] * s;
}

// (1 - mu)^e as a polynomial in mu with constant X-coefficients.
Bivariate one_minus_mu_pow(int e) {
  Bivariate out(e + 1);
  for (int i = 0; i <= e; ++i) {
    BigInt c = binomial(e, i);
    if (i % 2) c = -c;
    out[i] = IntPolynomial::constant(c);
  }
  return out;
}

// s_k / u^k = sum_j beta(k, j) (-mu X)^j (1 - mu)^{k-2j}.
Bivariate s_over_u(int k) {
  Bivariate out;
  for (int j = 0; 2 * j <= k; ++j) {
    BigInt coef = beta(k, j);
    if (j % 2) coef = -coef;
    const Bivariate base = one_minus_mu_pow(k - 2 * j);
    Bivariate term(base.size() + j);
    for (std::size_t i = 0; i < base.size(); ++i) term[i + j] = base[i] * IntPolynomial::monomial(1, j);
    add_scaled(out, term, coef);
  }
  return out;
}

}  // namespace

PkTable pk_table(int n) {
  if (n < 2) throw Error(Errc::InvalidArgument, "degree must be >= 2");

  // mu^n Y = sum_i (-1)^i C(n+1, i) s_{n-1+i} / u^{n-1+i}.
  Bivariate mun_y;
  for (int i = 0; i <= n + 1; ++i) {
    BigInt c = binomial(n + 1, i);
    if (i % 2) c = -c;
    add_scaled(mun_y, s_over_u(n - 1 + i), c);
  }
  for (int i = 0; i < n - 1 && i < static_cast<int>(mun_y.size()); ++i) {
    if (!mun_y[i].is_zero()) throw Error(Errc::InvalidArgument, "mu^n Y not divisible by mu^{n-1}");
  }
  mun_y.resize(2 * n + 1);

  // After dividing by mu^{n-1}: mu Y = sum_j (-mu)^j P_{n+1-j}(X).
  PkTable t;
  t.n = n;
  t.polys.resize(n + 2);
  for (int k = 0; k <= n + 1; ++k) {
    const int j = n + 1 - k;
    IntPolynomial p = mun_y[n - 1 + j];
    if (j % 2) p *= BigInt(-1);
    t.polys[k] = std::move(p);
  }
  return t;
}

std::string PkTable::to_string() const {
  std::string s;
  for (const auto& p : polys) {
    s += p.to_string();
    s += '\n';
  }
  return s;
}

const PkTable& pk_table_cached(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const PkTable>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<const PkTable>(pk_table(n));
  return *slot;
}

}  // namespace bicrit
