#include "probekit/rational.hpp"

#include <cmath>
#include <ostream>

#include "probekit/error.hpp"

namespace probekit {

Rational::Rational(long long num, long long den) {
  if (den == 0) throw Error(Errc::InvalidArgument, "zero denominator");
  v_ = mpq_class(static_cast<long>(num), static_cast<long>(den));
  v_.canonicalize();
}

Rational::Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

Rational Rational::operator/(const Rational& o) const {
  if (o.v_ == 0) throw Error(Errc::InvalidArgument, "division by zero");
  return Rational(mpq_class(v_ / o.v_));
}

Rational Rational::parse(std::string_view s) {
  if (s.empty()) throw Error(Errc::ParseError, "empty rational");
  // mpq set_str accepts whitespace and bases we do not want; validate shape first.
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  size_t i = 0;
  if (s[i] == '-' || s[i] == '+') i++;
  size_t digits = 0;
  while (i < s.size() && is_digit(s[i])) { i++; digits++; }
  if (digits == 0) throw Error(Errc::ParseError, "bad rational '" + std::string(s) + "'");
  if (i < s.size()) {
    if (s[i] != '/') throw Error(Errc::ParseError, "bad rational '" + std::string(s) + "'");
    i++;
    size_t den_digits = 0;
    while (i < s.size() && is_digit(s[i])) { i++; den_digits++; }
    if (den_digits == 0 || i != s.size())
      throw Error(Errc::ParseError, "bad rational '" + std::string(s) + "'");
  }
  mpq_class v;
  if (v.set_str(std::string(s), 10) != 0)
    throw Error(Errc::ParseError, "bad rational '" + std::string(s) + "'");
  if (v.get_den() == 0) throw Error(Errc::ParseError, "zero denominator in '" + std::string(s) + "'");
  v.canonicalize();
  Rational r;
  r.v_ = v;
  return r;
}

Rational Rational::from_double(double x, double max_err) {
  if (!std::isfinite(x)) throw Error(Errc::InvalidArgument, "non-finite double");
  mpq_class exact(x);  // doubles are dyadic rationals, this is lossless
  exact.canonicalize();
  Rational target(exact);
  Rational tol{mpq_class(max_err)};

  // Continued-fraction convergents of the exact dyadic value.
  mpz_class num = exact.get_num(), den = exact.get_den();
  bool neg = num < 0;
  if (neg) num = -num;
  mpz_class h0 = 1, h1 = 0, k0 = 0, k1 = 1;  // h0/k0 is the current convergent
  mpz_class a, r;
  mpz_class n = num, d = den;
  // First convergent: floor(x).
  mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  h0 = a; k0 = 1; h1 = 1; k1 = 0;
  n = d; d = r;
  for (int it = 0; it < 128; ++it) {
    Rational conv(mpq_class(neg ? mpz_class(-h0) : h0, k0));
    if ((conv - target).abs() <= tol) return conv;
    if (d == 0) return conv;  // exact
    mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    mpz_class h2 = a * h0 + h1, k2 = a * k0 + k1;
    h1 = h0; k1 = k0; h0 = h2; k0 = k2;
    n = d; d = r;
  }
  return target;
}

Rational Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  return Rational(mpq_class(q));
}

Rational Rational::ceil() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  return Rational(mpq_class(q));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace probekit
