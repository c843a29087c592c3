#include "probekit/geometry.hpp"

#include <numeric>
#include <ostream>

#include "probekit/error.hpp"

namespace probekit {

long long gcd_ll(long long a, long long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

LatticeVector primitive_vector(const LatticeVector& v) {
  if (v.is_zero()) throw Error(Errc::DegenerateDirection, "zero vector has no direction");
  long long g = gcd_ll(v.x, v.y);
  return {v.x / g, v.y / g};
}

bool is_primitive(const LatticeVector& v) {
  return !v.is_zero() && gcd_ll(v.x, v.y) == 1;
}

bool integrally_transverse(const LatticeVector& lambda, const LatticeVector& eta) {
  if (!is_primitive(lambda) || !is_primitive(eta))
    throw Error(Errc::NotPrimitive, "transversality is defined for primitive vectors");
  long long p = dot(lambda, eta);
  return p == 1 || p == -1;
}

std::ostream& operator<<(std::ostream& os, const LatticeVector& v) {
  return os << "(" << v.x << "," << v.y << ")";
}

std::ostream& operator<<(std::ostream& os, const Point& p) {
  return os << "(" << p.x << "," << p.y << ")";
}

RationalDirection rational_direction(const Point& from, const Point& to) {
  if (from == to) throw Error(Errc::DegenerateDirection, "coincident points");
  Rational dx = to.x - from.x;
  Rational dy = to.y - from.y;
  // Common denominator q, then dx = a/q, dy = b/q with integers a, b.
  mpz_class q;
  mpz_lcm(q.get_mpz_t(), dx.denominator().get_mpz_t(), dy.denominator().get_mpz_t());
  mpz_class a = dx.numerator() * (q / dx.denominator());
  mpz_class b = dy.numerator() * (q / dy.denominator());
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_class px = a / g, py = b / g;
  if (!px.fits_slong_p() || !py.fits_slong_p())
    throw Error(Errc::OutOfRange, "primitive direction exceeds machine range");
  LatticeVector v{px.get_si(), py.get_si()};
  return {v, Rational(mpq_class(g, q))};
}

Rational affine_distance(const Point& x, const Point& y) {
  if (x == y) return Rational(0);
  return rational_direction(x, y).t;
}

}  // namespace probekit
