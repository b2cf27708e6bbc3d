#include "polyenum/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

#include "polyenum/errors.hpp"

namespace polyenum {

namespace {

bool is_decimal_literal(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
  if (i == text.size()) return false;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  return true;
}

mpz_class parse_mpz(std::string_view text) {
  if (!is_decimal_literal(text)) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  if (text.front() == '+') text.remove_prefix(1);
  return mpz_class(std::string(text), 10);
}

}  // namespace

Integer Integer::parse(std::string_view text) { return Integer(parse_mpz(text)); }

Integer gcd(const Integer& a, const Integer& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.raw().get_mpz_t(), b.raw().get_mpz_t());
  return Integer(std::move(g));
}

Integer binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Integer(std::move(r));
}

Rational Rational::normalize(const Integer& num, const Integer& den) {
  if (den.is_zero()) throw ZeroDenominator("zero denominator");
  Rational r;
  r.value_ = mpq_class(num.raw(), den.raw());
  r.value_.canonicalize();
  return r;
}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(Integer::parse(text));
  auto den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text.front() == '+' || den_text.front() == '-')) {
    throw std::invalid_argument("signed denominator: '" + std::string(text) + "'");
  }
  return normalize(Integer::parse(text.substr(0, slash)), Integer::parse(den_text));
}

std::string Rational::to_string() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DivideByZero("division by zero");
  value_ /= o.value_;
  return *this;
}

Rational Rational::operator-() const {
  Rational r;
  mpq_neg(r.value_.get_mpq_t(), value_.get_mpq_t());
  return r;
}

void Rational::sub_mul(const Rational& b, const Rational& c) {
  thread_local mpq_class scratch;
  mpq_mul(scratch.get_mpq_t(), b.value_.get_mpq_t(), c.value_.get_mpq_t());
  mpq_sub(value_.get_mpq_t(), value_.get_mpq_t(), scratch.get_mpq_t());
}

void Rational::add_mul(const Rational& b, const Rational& c) {
  thread_local mpq_class scratch;
  mpq_mul(scratch.get_mpq_t(), b.value_.get_mpq_t(), c.value_.get_mpq_t());
  mpq_add(value_.get_mpq_t(), value_.get_mpq_t(), scratch.get_mpq_t());
}

int Rational::compare_products(const Rational& a, const Rational& b, const Rational& c,
                               const Rational& d) {
  thread_local mpq_class lhs;
  thread_local mpq_class rhs;
  mpq_mul(lhs.get_mpq_t(), a.value_.get_mpq_t(), b.value_.get_mpq_t());
  mpq_mul(rhs.get_mpq_t(), c.value_.get_mpq_t(), d.value_.get_mpq_t());
  int r = mpq_cmp(lhs.get_mpq_t(), rhs.get_mpq_t());
  return (r > 0) - (r < 0);
}

std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.to_string(); }
std::ostream& operator<<(std::ostream& os, const Rational& v) { return os << v.to_string(); }

}  // namespace polyenum
