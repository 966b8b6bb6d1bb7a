#ifndef TREEAUT_NADIC_HPP
#define TREEAUT_NADIC_HPP

#include <gmpxx.h>

#include <string>

namespace treeaut {

// An n-adic integer, stored exactly as a rational a/b in lowest terms with
// gcd(b, n) = 1. Such rationals embed in the n-adic integers; all digit and
// carry computations below are exact.
class NAdic {
 public:
  // The integer v as an n-adic.
  NAdic(int degree, long long v);

  // The rational value as an n-adic. Throws std::domain_error when the
  // reduced denominator shares a factor with the degree.
  NAdic(int degree, const mpq_class& value);

  static NAdic ratio(int degree, long long numerator, long long denominator);

  // Parses "a", "-a", or "a/b". Throws std::invalid_argument on malformed
  // text and std::domain_error when the denominator is not coprime to n.
  static NAdic parse(int degree, const std::string& text);

  int degree() const { return degree_; }
  const mpq_class& value() const { return value_; }

  bool is_integer() const { return value_.get_den() == 1; }
  bool is_zero() const { return value_ == 0; }

  // Digit d_i of the expansion x = d_0 + d_1 n + d_2 n^2 + ...
  int digit(int index) const;

  // d_0, the residue of x mod n, in {0, ..., n-1}.
  int residue() const;

  // True when x is a unit of Z_n, i.e. gcd(d_0, n) = 1.
  bool is_unit() const;

  // True when x is a unit with d_0 = 1.
  bool is_one_unit() const;

  // (x - d_0) / n, the tail of the digit expansion.
  NAdic shift_down() const;

  // Multiplicative inverse. Throws std::domain_error when x is not a unit.
  NAdic invert() const;

  NAdic power(long long exponent) const;

  NAdic operator-() const;
  NAdic operator+(const NAdic& other) const;
  NAdic operator-(const NAdic& other) const;
  NAdic operator*(const NAdic& other) const;

  bool operator==(const NAdic& other) const;
  bool operator!=(const NAdic& other) const { return !(*this == other); }

  // The exact rational, e.g. "-8/3" or "17".
  std::string to_string() const;

  // Digit window display, e.g. "adic[3 2 2 ...]" with `window` digits.
  std::string digits_string(int window = 32) const;

 private:
  int degree_;
  mpq_class value_;

  void validate() const;
};

// Carry indicator: 1 when adding the leading digits of eta and kappa carries,
// i.e. d_0(eta) + d_0(kappa) >= n, else 0.
int delta2(const NAdic& eta, const NAdic& kappa);
int delta2(int degree, long long eta, long long kappa);

// The difference delta(i, t - i) - delta(i - s, t - i), valued in {-1, 0, 1}.
int delta3(const NAdic& s, const NAdic& i, const NAdic& t);
int delta3(int degree, long long s, long long i, long long t);

}  // namespace treeaut

#endif  // TREEAUT_NADIC_HPP
