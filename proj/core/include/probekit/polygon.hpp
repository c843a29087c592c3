#pragma once

#include <optional>
#include <vector>

#include "probekit/affine.hpp"
#include "probekit/geometry.hpp"

namespace probekit {

/// Constraint <normal, p> >= offset with primitive inward normal.
struct HalfPlane {
  LatticeVector normal;
  Rational offset;

  bool operator==(const HalfPlane& o) const { return normal == o.normal && offset == o.offset; }
  Rational eval(const Point& p) const { return normal.x * p.x + normal.y * p.y - offset; }
};

/// One boundary edge. A missing endpoint means the edge escapes to infinity.
/// `dir` points along the counterclockwise traversal and is primitive.
struct Edge {
  std::optional<Point> from;
  std::optional<Point> to;
  LatticeVector dir;
  HalfPlane support;

  bool bounded() const { return from && to; }
};

struct SliceInterval {
  Rational lo;
  Rational hi;
  Rational width() const { return hi - lo; }
};

struct RayExit {
  std::optional<Point> point;  // nullopt: the ray never leaves (recession direction)
  std::optional<Rational> distance;

  bool finite() const { return point.has_value(); }
};

/// Convex rational polygon, bounded or unbounded with exactly two recession rays.
///
/// Canonical form: vertices counterclockwise; bounded polygons start at the
/// lexicographically smallest vertex; unbounded boundaries are the path
/// in-ray -> vertices -> out-ray with rays[0]/rays[1] the primitive recession
/// directions of the incoming and outgoing unbounded edges (pointing to
/// infinity). Facets are stored aligned with the edge traversal.
class RationalPolygon {
 public:
  RationalPolygon() = default;  // empty placeholder; not a valid polygon

  static RationalPolygon from_halfplanes(const std::vector<HalfPlane>& hps);
  static RationalPolygon from_vertices(std::vector<Point> ccw_vertices,
                                       std::vector<LatticeVector> rays = {});

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<LatticeVector>& rays() const { return rays_; }
  const std::vector<HalfPlane>& halfplanes() const { return halfplanes_; }
  bool bounded() const { return rays_.empty(); }

  std::vector<Edge> edges() const;

  bool contains(const Point& p) const;
  bool strictly_contains(const Point& p) const;
  bool on_boundary(const Point& p) const;
  bool is_vertex(const Point& p) const;

  /// Shoelace area. Bounded polygons only.
  Rational area() const;

  /// {y : (x0, y) in polygon}; OutOfRange when x0 misses the projection.
  SliceInterval slice_interval(const Rational& x0) const;

  Rational min_x() const;  // bounded direction required
  Rational max_x() const;

  /// Last point of poly on the ray w + t*lambda, t >= 0, with its affine distance.
  /// Requires w in the polygon and the ray to enter the interior immediately.
  RayExit ray_exit(const Point& w, const LatticeVector& lambda) const;

  /// Closed containment of anchor + [0,R]x[0,h] with open interior disjoint
  /// from every obstacle segment.
  bool rectangle_fits(const Point& anchor, const Rational& R, const Rational& h,
                      const std::vector<Segment>& obstacles = {}) const;

  bool is_delzant_corner(const Point& vertex) const;

  /// nullopt encodes infinite affine length (ray edges).
  static std::optional<Rational> edge_affine_length(const Edge& e);

  bool operator==(const RationalPolygon& o) const {
    return vertices_ == o.vertices_ && rays_ == o.rays_;
  }

 private:
  std::vector<Point> vertices_;
  std::vector<LatticeVector> rays_;       // empty or {r_in, r_out}
  std::vector<HalfPlane> halfplanes_;     // aligned with edges()
};

RationalPolygon affine_apply(const AffineMap& T, const RationalPolygon& poly);

/// True when the open interior of anchor+[0,R]x[0,h] meets the closed segment.
bool open_rectangle_intersects_segment(const Point& anchor, const Rational& R,
                                       const Rational& h, const Segment& seg);

}  // namespace probekit
