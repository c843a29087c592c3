#include "probekit/affine.hpp"

#include "probekit/error.hpp"

namespace probekit {

AffineMap::AffineMap(std::array<long long, 4> linear, Point translation)
    : m_(linear), t_(translation) {
  long long d = m_[0] * m_[3] - m_[1] * m_[2];
  if (d != 1 && d != -1)
    throw Error(Errc::InvalidArgument, "linear part must be unimodular");
}

AffineMap AffineMap::compose(const AffineMap& inner) const {
  std::array<long long, 4> l{
      m_[0] * inner.m_[0] + m_[1] * inner.m_[2],
      m_[0] * inner.m_[1] + m_[1] * inner.m_[3],
      m_[2] * inner.m_[0] + m_[3] * inner.m_[2],
      m_[2] * inner.m_[1] + m_[3] * inner.m_[3],
  };
  return AffineMap(l, (*this)(inner.t_));
}

AffineMap AffineMap::inverse() const {
  long long d = det();  // +-1
  std::array<long long, 4> inv{d * m_[3], -d * m_[1], -d * m_[2], d * m_[0]};
  AffineMap r(inv, Point{});
  Point it = r(t_);
  return AffineMap(inv, Point{-it.x, -it.y});
}

Point AffineMap::operator()(const Point& p) const {
  return {m_[0] * p.x + m_[1] * p.y + t_.x, m_[2] * p.x + m_[3] * p.y + t_.y};
}

LatticeVector AffineMap::linear_map(const LatticeVector& v) const {
  return {m_[0] * v.x + m_[1] * v.y, m_[2] * v.x + m_[3] * v.y};
}

AffineMap corner_normalization(const LatticeVector& u1, const LatticeVector& u2,
                               const Point& apex) {
  if (!is_primitive(u1) || !is_primitive(u2))
    throw Error(Errc::NotDelzant, "corner edge directions must be primitive");
  long long d = det(u1, u2);
  if (d != 1 && d != -1)
    throw Error(Errc::NotDelzant, "edge directions are not a Z-basis");
  // Inverse of the column matrix [u1 u2].
  std::array<long long, 4> l{d * u2.y, -d * u2.x, -d * u1.y, d * u1.x};
  AffineMap lin = AffineMap::linear(l);
  Point image = lin(apex);
  return AffineMap(l, Point{-image.x, -image.y});
}

}  // namespace probekit
