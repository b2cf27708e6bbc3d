#pragma once

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace polyenum {

/// Arbitrary-precision signed integer.
class Integer {
 public:
  Integer() = default;
  Integer(long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Integer(mpz_class v) : value_(std::move(v)) {}

  /// Parses an optionally signed decimal literal; throws std::invalid_argument.
  static Integer parse(std::string_view text);

  const mpz_class& raw() const noexcept { return value_; }

  int sign() const noexcept { return sgn(value_); }
  bool is_zero() const noexcept { return sign() == 0; }
  std::string to_string() const { return value_.get_str(); }

  Integer abs() const { return Integer(mpz_class(::abs(value_))); }

  friend Integer operator+(const Integer& a, const Integer& b) { return Integer(mpz_class(a.value_ + b.value_)); }
  friend Integer operator-(const Integer& a, const Integer& b) { return Integer(mpz_class(a.value_ - b.value_)); }
  friend Integer operator*(const Integer& a, const Integer& b) { return Integer(mpz_class(a.value_ * b.value_)); }
  Integer operator-() const { return Integer(mpz_class(-value_)); }

  friend bool operator==(const Integer& a, const Integer& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
    return cmp(a.value_, b.value_) <=> 0;
  }

 private:
  mpz_class value_;
};

Integer gcd(const Integer& a, const Integer& b);
Integer binomial(unsigned long n, unsigned long k);

/// Exact fraction kept in canonical form: den > 0 and gcd(|num|, den) = 1.
///
/// Canonicalisation happens at construction, so structural equality is
/// numeric equality.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& v) : value_(v.raw()) {}  // NOLINT(google-explicit-constructor)

  /// Throws ZeroDenominator when den is zero.
  static Rational normalize(const Integer& num, const Integer& den);

  /// Parses "p" or "p/q" with optional sign on p; throws std::invalid_argument
  /// for malformed text and ZeroDenominator for q = 0.
  static Rational parse(std::string_view text);

  Integer num() const { return Integer(mpz_class(value_.get_num())); }
  Integer den() const { return Integer(mpz_class(value_.get_den())); }

  int sign() const noexcept { return sgn(value_); }
  bool is_zero() const noexcept { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  /// "num/den", or "num" when den is 1.
  std::string to_string() const;

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return cmp(a.value_, b.value_) <=> 0;
  }

  /// In-place a -= b * c and a += b * c, the tableau update kernels.
  void sub_mul(const Rational& b, const Rational& c);
  void add_mul(const Rational& b, const Rational& c);

  /// Sign of a*b - c*d without allocating.
  static int compare_products(const Rational& a, const Rational& b, const Rational& c, const Rational& d);

 private:
  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Integer& v);
std::ostream& operator<<(std::ostream& os, const Rational& v);

}  // namespace polyenum
