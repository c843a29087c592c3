#pragma once

#include <array>

#include "probekit/geometry.hpp"

namespace probekit {

/// Element of Aff(2,Z): unimodular integer linear part plus rational translation.
/// Linear part stored row-major: [[m[0], m[1]], [m[2], m[3]]].
class AffineMap {
 public:
  AffineMap() : m_{1, 0, 0, 1} {}
  AffineMap(std::array<long long, 4> linear, Point translation);

  static AffineMap identity() { return AffineMap(); }
  /// T^k = [[1,0],[k,1]], the vertical shear.
  static AffineMap shear(long long k) { return AffineMap({1, 0, k, 1}, Point{}); }
  static AffineMap translation(Point t) { return AffineMap({1, 0, 0, 1}, t); }
  static AffineMap linear(std::array<long long, 4> l) { return AffineMap(l, Point{}); }

  long long det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }

  /// (*this)(inner(p)).
  AffineMap compose(const AffineMap& inner) const;
  AffineMap inverse() const;

  Point operator()(const Point& p) const;
  Segment operator()(const Segment& s) const { return {(*this)(s.a), (*this)(s.b)}; }
  LatticeVector linear_map(const LatticeVector& v) const;

  /// Maps vertical lines to vertical lines (linear part lower-triangular).
  bool preserves_verticals() const { return m_[1] == 0; }

  const std::array<long long, 4>& linear_part() const { return m_; }
  const Point& translation_part() const { return t_; }

  bool operator==(const AffineMap& o) const { return m_ == o.m_ && t_ == o.t_; }

 private:
  std::array<long long, 4> m_;
  Point t_;
};

/// The map taking apex to the origin, u1 to (1,0) and u2 to (0,1).
/// Requires u1, u2 primitive with det [u1 u2] = +-1 (NotDelzant otherwise).
AffineMap corner_normalization(const LatticeVector& u1, const LatticeVector& u2,
                               const Point& apex);

}  // namespace probekit
