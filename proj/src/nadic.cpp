#include "treeaut/nadic.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace treeaut {

NAdic::NAdic(int degree, long long v) : degree_(degree), value_(static_cast<long>(v)) {
  validate();
}

NAdic::NAdic(int degree, const mpq_class& value) : degree_(degree), value_(value) {
  value_.canonicalize();
  validate();
}

NAdic NAdic::ratio(int degree, long long numerator, long long denominator) {
  if (denominator == 0) throw std::domain_error("zero denominator");
  mpq_class q(static_cast<long>(numerator), static_cast<long>(denominator));
  q.canonicalize();
  return NAdic(degree, q);
}

NAdic NAdic::parse(int degree, const std::string& text) {
  std::size_t pos = 0;
  auto parse_int = [&](bool sign_allowed) {
    std::size_t start = pos;
    if (sign_allowed && pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    std::size_t digits_start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == digits_start) throw std::invalid_argument("malformed rational: " + text);
    return text.substr(start, pos - start);
  };
  std::string numerator = parse_int(true);
  std::string denominator = "1";
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    denominator = parse_int(false);
  }
  if (pos != text.size()) throw std::invalid_argument("malformed rational: " + text);
  mpq_class q;
  if (q.set_str(numerator + "/" + denominator, 10) != 0) {
    throw std::invalid_argument("malformed rational: " + text);
  }
  if (q.get_den() == 0) throw std::domain_error("zero denominator");
  q.canonicalize();
  return NAdic(degree, q);
}

void NAdic::validate() const {
  if (degree_ < 2) throw std::invalid_argument("n-adic degree must be at least 2");
  mpz_class g;
  mpz_class deg(degree_);
  mpz_gcd(g.get_mpz_t(), value_.get_den().get_mpz_t(), deg.get_mpz_t());
  if (g != 1) {
    throw std::domain_error("denominator " + value_.get_den().get_str() +
                            " is not coprime to degree " + std::to_string(degree_));
  }
}

int NAdic::residue() const {
  mpz_class deg(degree_);
  mpz_class den_inverse;
  if (mpz_invert(den_inverse.get_mpz_t(), value_.get_den().get_mpz_t(), deg.get_mpz_t()) == 0) {
    throw std::logic_error("denominator not invertible mod degree");
  }
  mpz_class r = value_.get_num() * den_inverse;
  mpz_class reduced;
  mpz_mod(reduced.get_mpz_t(), r.get_mpz_t(), deg.get_mpz_t());
  return static_cast<int>(reduced.get_si());
}

int NAdic::digit(int index) const {
  if (index < 0) throw std::invalid_argument("digit index must be nonnegative");
  NAdic current = *this;
  for (int i = 0; i < index; ++i) current = current.shift_down();
  return current.residue();
}

bool NAdic::is_unit() const {
  mpz_class g;
  mpz_class deg(degree_);
  mpz_class r(residue());
  mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), deg.get_mpz_t());
  return g == 1;
}

bool NAdic::is_one_unit() const { return residue() == 1; }

NAdic NAdic::shift_down() const {
  mpq_class shifted = (value_ - residue()) / degree_;
  shifted.canonicalize();
  return NAdic(degree_, shifted);
}

NAdic NAdic::invert() const {
  if (!is_unit()) {
    throw std::domain_error("not a unit: " + to_string() + " has leading digit " +
                            std::to_string(residue()) + " mod " + std::to_string(degree_));
  }
  mpq_class inv = 1 / value_;
  inv.canonicalize();
  return NAdic(degree_, inv);
}

NAdic NAdic::power(long long exponent) const {
  mpq_class base = value_;
  if (exponent < 0) {
    if (value_ == 0) throw std::domain_error("zero has no negative powers");
    base = 1 / base;
  }
  unsigned long long e = exponent < 0 ? static_cast<unsigned long long>(-(exponent + 1)) + 1ULL
                                      : static_cast<unsigned long long>(exponent);
  mpq_class result(1);
  while (e > 0) {
    if (e & 1ULL) result *= base;
    base *= base;
    e >>= 1ULL;
  }
  result.canonicalize();
  return NAdic(degree_, result);
}

NAdic NAdic::operator-() const { return NAdic(degree_, mpq_class(-value_)); }

NAdic NAdic::operator+(const NAdic& other) const {
  if (degree_ != other.degree_) throw std::invalid_argument("degree mismatch");
  return NAdic(degree_, mpq_class(value_ + other.value_));
}

NAdic NAdic::operator-(const NAdic& other) const {
  if (degree_ != other.degree_) throw std::invalid_argument("degree mismatch");
  return NAdic(degree_, mpq_class(value_ - other.value_));
}

NAdic NAdic::operator*(const NAdic& other) const {
  if (degree_ != other.degree_) throw std::invalid_argument("degree mismatch");
  return NAdic(degree_, mpq_class(value_ * other.value_));
}

bool NAdic::operator==(const NAdic& other) const {
  return degree_ == other.degree_ && value_ == other.value_;
}

std::string NAdic::to_string() const { return value_.get_str(); }

std::string NAdic::digits_string(int window) const {
  if (window < 1) throw std::invalid_argument("digit window must be positive");
  std::ostringstream out;
  out << "adic[";
  NAdic current = *this;
  for (int i = 0; i < window; ++i) {
    if (i > 0) out << ' ';
    out << current.residue();
    current = current.shift_down();
  }
  out << "]";
  return out.str();
}

int delta2(const NAdic& eta, const NAdic& kappa) {
  if (eta.degree() != kappa.degree()) throw std::invalid_argument("degree mismatch");
  return eta.residue() + kappa.residue() >= eta.degree() ? 1 : 0;
}

int delta2(int degree, long long eta, long long kappa) {
  return delta2(NAdic(degree, eta), NAdic(degree, kappa));
}

int delta3(const NAdic& s, const NAdic& i, const NAdic& t) {
  return delta2(i, t - i) - delta2(i - s, t - i);
}

int delta3(int degree, long long s, long long i, long long t) {
  return delta3(NAdic(degree, s), NAdic(degree, i), NAdic(degree, t));
}

}  // namespace treeaut
