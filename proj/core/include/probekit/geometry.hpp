#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "probekit/rational.hpp"

namespace probekit {

/// Integral vector in Z^2.
struct LatticeVector {
  long long x = 0;
  long long y = 0;

  bool operator==(const LatticeVector& o) const = default;
  LatticeVector operator+(const LatticeVector& o) const { return {x + o.x, y + o.y}; }
  LatticeVector operator-(const LatticeVector& o) const { return {x - o.x, y - o.y}; }
  LatticeVector operator-() const { return {-x, -y}; }
  bool is_zero() const { return x == 0 && y == 0; }
};

inline long long dot(const LatticeVector& a, const LatticeVector& b) {
  return a.x * b.x + a.y * b.y;
}

/// Determinant of the 2x2 matrix with columns a, b.
inline long long det(const LatticeVector& a, const LatticeVector& b) {
  return a.x * b.y - a.y * b.x;
}

inline LatticeVector rot_ccw(const LatticeVector& v) { return {-v.y, v.x}; }
inline LatticeVector rot_cw(const LatticeVector& v) { return {v.y, -v.x}; }

long long gcd_ll(long long a, long long b);

/// v / gcd(|v.x|, |v.y|); same orientation as v. Throws DegenerateDirection on (0,0).
LatticeVector primitive_vector(const LatticeVector& v);

bool is_primitive(const LatticeVector& v);

/// |<lambda, eta>| == 1. Both inputs must be primitive (NotPrimitive otherwise).
bool integrally_transverse(const LatticeVector& lambda, const LatticeVector& eta);

std::ostream& operator<<(std::ostream& os, const LatticeVector& v);

/// Point with exact rational coordinates.
struct Point {
  Rational x;
  Rational y;

  bool operator==(const Point& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Point& o) const { return !(*this == o); }
  Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
  Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
};

std::ostream& operator<<(std::ostream& os, const Point& p);

struct Segment {
  Point a;
  Point b;

  bool operator==(const Segment& o) const = default;
  bool degenerate() const { return a == b; }
};

/// Factorization to - from = t * v with v the primitive lattice direction and t > 0.
struct RationalDirection {
  LatticeVector v;
  Rational t;
};

/// Requires from != to. All rational point differences have a lattice direction.
RationalDirection rational_direction(const Point& from, const Point& to);

/// Aff(2,Z)-invariant distance: the t with y - x = t * primitive(y - x); 0 when x == y.
Rational affine_distance(const Point& x, const Point& y);

}  // namespace probekit
