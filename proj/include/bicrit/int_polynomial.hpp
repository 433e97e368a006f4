#ifndef BICRIT_INT_POLYNOMIAL_HPP
#define BICRIT_INT_POLYNOMIAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <initializer_list>
#include <limits>
#include <string>
#include <vector>

namespace bicrit {

using BigInt = boost::multiprecision::cpp_int;

/// Polynomial in one variable with arbitrary-precision integer coefficients,
/// lowest degree first. Canonical form has no trailing zero coefficient.
class IntPolynomial {
 public:
  static constexpr int kZeroDegree = std::numeric_limits<int>::min();

  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }
  IntPolynomial(std::initializer_list<long long> coeffs) {
    for (long long v : coeffs) c_.emplace_back(v);
    trim();
  }

  static IntPolynomial constant(const BigInt& v) { return IntPolynomial(std::vector<BigInt>{v}); }
  static IntPolynomial monomial(const BigInt& v, int k) {
    std::vector<BigInt> c(k + 1);
    c[k] = v;
    return IntPolynomial(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return c_.empty() ? kZeroDegree : static_cast<int>(c_.size()) - 1; }
  const std::vector<BigInt>& coefficients() const { return c_; }

  /// Coefficient of X^k; zero beyond the degree.
  BigInt operator[](int k) const {
    return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : BigInt(0);
  }

  IntPolynomial& operator+=(const IntPolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  IntPolynomial& operator-=(const IntPolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  IntPolynomial& operator*=(const BigInt& s) {
    for (auto& v : c_) v *= s;
    trim();
    return *this;
  }

  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
  friend IntPolynomial operator*(IntPolynomial a, const BigInt& s) { return a *= s; }
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return IntPolynomial(std::move(c));
  }
  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.c_ == b.c_; }

  /// Horner evaluation in double precision.
  std::complex<double> operator()(std::complex<double> x) const {
    std::complex<double> acc(0.0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->convert_to<double>();
    return acc;
  }

  /// Space-separated decimal coefficients, lowest degree first; "0" for zero.
  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) s += ' ';
      s += c_[i].str();
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<BigInt> c_;
};

/// C(p, q), zero outside 0 <= q <= p.
inline BigInt binomial(int p, int q) {
  if (q < 0 || p < 0 || q > p) return 0;
  if (q > p - q) q = p - q;
  BigInt r = 1;
  for (int i = 1; i <= q; ++i) {
    r *= p - q + i;
    r /= i;
  }
  return r;
}

/// beta(m, k) = C(m-k, k) + C(m-k-1, k-1).
inline BigInt beta(int m, int k) { return binomial(m - k, k) + binomial(m - k - 1, k - 1); }

}  // namespace bicrit

#endif  // BICRIT_INT_POLYNOMIAL_HPP
