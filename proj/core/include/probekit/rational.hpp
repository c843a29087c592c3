#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace probekit {

/// Exact arbitrary-precision rational. Always reduced, denominator > 0.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(static_cast<long>(n)) {}
  Rational(long n) : v_(n) {}
  Rational(long long n) : v_(static_cast<long>(n)) {}
  Rational(long long num, long long den);
  explicit Rational(const mpq_class& v);

  /// Accepts "p", "-p", "p/q"; anything else (floats included) is a ParseError.
  static Rational parse(std::string_view s);

  /// Best continued-fraction convergent within max_err of x.
  static Rational from_double(double x, double max_err = 1e-9);

  Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
  Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
  Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
  Rational operator/(const Rational& o) const;
  Rational operator-() const { return Rational(mpq_class(-v_)); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

  bool operator==(const Rational& o) const { return v_ == o.v_; }
  bool operator!=(const Rational& o) const { return v_ != o.v_; }
  bool operator<(const Rational& o) const { return v_ < o.v_; }
  bool operator<=(const Rational& o) const { return v_ <= o.v_; }
  bool operator>(const Rational& o) const { return v_ > o.v_; }
  bool operator>=(const Rational& o) const { return v_ >= o.v_; }

  int sign() const { return sgn(v_); }
  Rational abs() const { return Rational(mpq_class(::abs(v_))); }
  bool is_integer() const { return v_.get_den() == 1; }

  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  /// Largest integer <= value / smallest integer >= value, as Rational.
  Rational floor() const;
  Rational ceil() const;

  double to_double() const { return v_.get_d(); }
  std::string str() const { return v_.get_str(); }

  const mpq_class& raw() const { return v_; }

 private:
  mpq_class v_;  // invariant: canonical form
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational operator*(long long a, const Rational& r) { return Rational(a) * r; }

}  // namespace probekit
