#include "probekit/polygon.hpp"

#include <algorithm>
#include <map>

#include "probekit/error.hpp"

namespace probekit {

namespace {

Rational cross_r(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }

bool lex_less(const Point& a, const Point& b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

// Line through p with direction d, intersected with line through q with direction e.
std::optional<Point> line_intersection(const LatticeVector& n1, const Rational& c1,
                                       const LatticeVector& n2, const Rational& c2) {
  long long d = n1.x * n2.y - n1.y * n2.x;
  if (d == 0) return std::nullopt;
  Rational dd(d);
  Rational x = (c1 * Rational(n2.y) - c2 * Rational(n1.y)) / dd;
  Rational y = (Rational(n1.x) * c2 - Rational(n2.x) * c1) / dd;
  return Point{x, y};
}

// Drops points that are not corners of the CCW cycle (collinear with neighbors).
void absorb_collinear_cycle(std::vector<Point>& v) {
  bool changed = true;
  while (changed && v.size() >= 3) {
    changed = false;
    for (size_t i = 0; i < v.size(); ++i) {
      const Point& a = v[(i + v.size() - 1) % v.size()];
      const Point& b = v[i];
      const Point& c = v[(i + 1) % v.size()];
      if (cross_r(b - a, c - b) == Rational(0)) {
        v.erase(v.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
}

}  // namespace

bool open_rectangle_intersects_segment(const Point& anchor, const Rational& R,
                                       const Rational& h, const Segment& seg) {
  const Rational x0 = anchor.x, x1 = anchor.x + R;
  const Rational y0 = anchor.y, y1 = anchor.y + h;
  // Clip seg to the closed rectangle (exact Liang-Barsky).
  Rational tlo(0), thi(1);
  auto clip = [&](const Rational& d, const Rational& room) -> bool {
    // constraint: t*d <= room
    if (d == Rational(0)) return room >= Rational(0);
    Rational t = room / d;
    if (d > Rational(0)) {
      if (t < thi) thi = t;
    } else {
      if (t > tlo) tlo = t;
    }
    return true;
  };
  Rational dx = seg.b.x - seg.a.x, dy = seg.b.y - seg.a.y;
  if (!clip(-dx, seg.a.x - x0)) return false;   // x >= x0
  if (!clip(dx, x1 - seg.a.x)) return false;    // x <= x1
  if (!clip(-dy, seg.a.y - y0)) return false;   // y >= y0
  if (!clip(dy, y1 - seg.a.y)) return false;    // y <= y1
  if (tlo > thi) return false;
  Point p{seg.a.x + tlo * dx, seg.a.y + tlo * dy};
  Point q{seg.a.x + thi * dx, seg.a.y + thi * dy};
  if (p == q) {
    // Single contact: blocks only when strictly inside.
    return p.x > x0 && p.x < x1 && p.y > y0 && p.y < y1;
  }
  // A positive-length piece inside the closed rectangle is interior unless it
  // lies inside one face line.
  if (p.x == x0 && q.x == x0) return false;
  if (p.x == x1 && q.x == x1) return false;
  if (p.y == y0 && q.y == y0) return false;
  if (p.y == y1 && q.y == y1) return false;
  return true;
}

RationalPolygon RationalPolygon::from_halfplanes(const std::vector<HalfPlane>& input) {
  if (input.size() < 2) throw Error(Errc::DegeneratePolygon, "need at least two half-planes");
  // Deduplicate by normal, keeping the tightest offset.
  std::vector<HalfPlane> hps;
  for (const HalfPlane& h : input) {
    if (!is_primitive(h.normal))
      throw Error(Errc::NotPrimitive, "half-plane normal must be primitive");
    bool merged = false;
    for (HalfPlane& k : hps) {
      if (k.normal == h.normal) {
        if (h.offset > k.offset) k.offset = h.offset;
        merged = true;
        break;
      }
    }
    if (!merged) hps.push_back(h);
  }

  // Recession cone: directions d with <n, d> >= 0 for every constraint.
  // Extreme rays of a pointed cone are rotations of some constraint normal.
  std::vector<LatticeVector> cone;
  for (const HalfPlane& h : hps) {
    for (LatticeVector d : {rot_ccw(h.normal), rot_cw(h.normal)}) {
      bool ok = true;
      for (const HalfPlane& k : hps) {
        if (dot(k.normal, d) < 0) { ok = false; break; }
      }
      if (ok && std::find(cone.begin(), cone.end(), d) == cone.end()) cone.push_back(d);
    }
  }
  for (const LatticeVector& d : cone) {
    if (std::find(cone.begin(), cone.end(), -d) != cone.end())
      throw Error(Errc::DegeneratePolygon, "recession cone contains a line");
  }
  if (cone.size() > 2)
    throw Error(Errc::DegeneratePolygon, "unsupported recession cone");
  if (cone.size() == 1)
    throw Error(Errc::DegeneratePolygon, "half-strip regions are not supported");

  // Candidate vertices: pairwise line intersections feasible for all constraints.
  std::vector<Point> cands;
  for (size_t i = 0; i < hps.size(); ++i) {
    for (size_t j = i + 1; j < hps.size(); ++j) {
      auto p = line_intersection(hps[i].normal, hps[i].offset, hps[j].normal, hps[j].offset);
      if (!p) continue;
      bool ok = true;
      for (const HalfPlane& k : hps) {
        if (k.eval(*p) < Rational(0)) { ok = false; break; }
      }
      if (ok && std::find(cands.begin(), cands.end(), *p) == cands.end()) cands.push_back(*p);
    }
  }

  if (cone.empty()) {
    if (cands.size() < 3) throw Error(Errc::DegeneratePolygon, "intersection is not 2-dimensional");
    // Counterclockwise around the centroid.
    Point c{Rational(0), Rational(0)};
    for (const Point& p : cands) { c.x += p.x; c.y += p.y; }
    Rational n((long long)cands.size());
    c.x /= n; c.y /= n;
    auto half = [&](const Point& p) {
      Point d = p - c;
      return (d.y > Rational(0) || (d.y == Rational(0) && d.x > Rational(0))) ? 0 : 1;
    };
    std::sort(cands.begin(), cands.end(), [&](const Point& a, const Point& b) {
      int ha = half(a), hb = half(b);
      if (ha != hb) return ha < hb;
      return cross_r(a - c, b - c) > Rational(0);
    });
    return from_vertices(std::move(cands));
  }

  // Unbounded: walk the boundary path from the incoming ray to the outgoing one.
  if (cands.empty()) throw Error(Errc::DegeneratePolygon, "unbounded region without vertices");

  // Ray orientation: r is outgoing iff rot_ccw(r) is the normal of its facet.
  auto facet_of_ray = [&](const LatticeVector& r) -> const HalfPlane* {
    for (const HalfPlane& h : hps) {
      if (dot(h.normal, r) != 0) continue;
      // The face must actually be unbounded in direction r: some feasible point on it.
      for (const Point& p : cands) {
        if (h.eval(p) == Rational(0)) return &h;
      }
    }
    return nullptr;
  };
  LatticeVector r_in{}, r_out{};
  const HalfPlane* f_in = nullptr;
  for (const LatticeVector& r : cone) {
    const HalfPlane* f = facet_of_ray(r);
    if (!f) throw Error(Errc::DegeneratePolygon, "recession ray without a supporting facet");
    if (rot_ccw(r) == f->normal) {
      r_out = r;
    } else {
      r_in = r;
      f_in = f;
    }
  }
  if (r_in.is_zero() || r_out.is_zero() || !f_in)
    throw Error(Errc::DegeneratePolygon, "could not orient recession rays");

  // Start vertex: extreme point of the incoming facet toward infinity.
  std::vector<Point> on_in;
  for (const Point& p : cands) {
    if (f_in->eval(p) == Rational(0)) on_in.push_back(p);
  }
  auto along = [](const LatticeVector& d, const Point& p) {
    return Rational(d.x) * p.x + Rational(d.y) * p.y;
  };
  Point cur = on_in.front();
  for (const Point& p : on_in) {
    if (along(r_in, p) > along(r_in, cur)) cur = p;
  }

  // Walk facet to facet. At each vertex continue along the other active facet.
  std::vector<Point> path{cur};
  const HalfPlane* prev_facet = f_in;
  for (size_t guard = 0; guard <= hps.size() + cands.size(); ++guard) {
    const HalfPlane* next_facet = nullptr;
    for (const HalfPlane& h : hps) {
      if (&h == prev_facet) continue;
      if (h.eval(cur) == Rational(0)) { next_facet = &h; break; }
    }
    if (!next_facet) throw Error(Errc::DegeneratePolygon, "boundary walk failed");
    if (dot(next_facet->normal, r_out) == 0 && rot_ccw(r_out) == next_facet->normal) {
      // Check no further vertex lies ahead on this facet before infinity.
      const HalfPlane* f = next_facet;
      Point far = cur;
      for (const Point& p : cands) {
        if (f->eval(p) == Rational(0) && along(r_out, p) > along(r_out, far)) far = p;
      }
      if (far == cur) break;  // out-ray reached
    }
    // Next vertex: nearest candidate on next_facet strictly ahead (interior left).
    LatticeVector travel = rot_cw(next_facet->normal);
    std::optional<Point> best;
    for (const Point& p : cands) {
      if (p == cur || next_facet->eval(p) != Rational(0)) continue;
      if (along(travel, p) <= along(travel, cur)) continue;
      if (!best || along(travel, p) < along(travel, *best)) best = p;
    }
    if (!best) throw Error(Errc::DegeneratePolygon, "boundary walk failed");
    path.push_back(*best);
    cur = *best;
    prev_facet = next_facet;
  }
  return from_vertices(std::move(path), {r_in, r_out});
}

RationalPolygon RationalPolygon::from_vertices(std::vector<Point> v,
                                               std::vector<LatticeVector> rays) {
  // Drop consecutive duplicates.
  for (size_t i = 0; i < v.size();) {
    if (v.size() > 1 && v[i] == v[(i + 1) % v.size()]) v.erase(v.begin() + static_cast<long>(i));
    else ++i;
  }

  RationalPolygon poly;
  if (rays.empty()) {
    if (v.size() >= 3) {
      // Orient counterclockwise.
      Rational twice_area(0);
      for (size_t i = 0; i < v.size(); ++i) twice_area += cross_r(v[i], v[(i + 1) % v.size()]);
      if (twice_area < Rational(0)) std::reverse(v.begin(), v.end());
    }
    absorb_collinear_cycle(v);
    if (v.size() < 3) throw Error(Errc::DegeneratePolygon, "fewer than three corners");
    // Convexity: every turn is a left turn.
    for (size_t i = 0; i < v.size(); ++i) {
      const Point& a = v[(i + v.size() - 1) % v.size()];
      const Point& b = v[i];
      const Point& c = v[(i + 1) % v.size()];
      if (cross_r(b - a, c - b) <= Rational(0))
        throw Error(Errc::DegeneratePolygon, "vertex cycle is not convex");
    }
    // Canonical start: lexicographically smallest vertex.
    size_t best = 0;
    for (size_t i = 1; i < v.size(); ++i) {
      if (lex_less(v[i], v[best])) best = i;
    }
    std::rotate(v.begin(), v.begin() + static_cast<long>(best), v.end());
    poly.vertices_ = std::move(v);
    for (size_t i = 0; i < poly.vertices_.size(); ++i) {
      const Point& a = poly.vertices_[i];
      const Point& b = poly.vertices_[(i + 1) % poly.vertices_.size()];
      LatticeVector dir = rational_direction(a, b).v;
      LatticeVector n = rot_ccw(dir);
      poly.halfplanes_.push_back({n, Rational(n.x) * a.x + Rational(n.y) * a.y});
    }
  } else {
    if (rays.size() != 2) throw Error(Errc::DegeneratePolygon, "unbounded polygons carry two rays");
    if (v.empty()) throw Error(Errc::DegeneratePolygon, "unbounded polygon without vertices");
    LatticeVector r_in = primitive_vector(rays[0]);
    LatticeVector r_out = primitive_vector(rays[1]);
    // Collinear absorption along the path, including into the ray edges.
    auto travel_dirs = [&](const std::vector<Point>& pts) {
      std::vector<Point> dirs;  // rational dirs of consecutive travel, incl. rays
      dirs.push_back(Point{Rational(-r_in.x), Rational(-r_in.y)});
      for (size_t i = 0; i + 1 < pts.size(); ++i) dirs.push_back(pts[i + 1] - pts[i]);
      dirs.push_back(Point{Rational(r_out.x), Rational(r_out.y)});
      return dirs;
    };
    bool changed = true;
    while (changed && !v.empty()) {
      changed = false;
      auto dirs = travel_dirs(v);
      for (size_t i = 0; i < v.size(); ++i) {
        if (cross_r(dirs[i], dirs[i + 1]) == Rational(0)) {
          v.erase(v.begin() + static_cast<long>(i));
          changed = true;
          break;
        }
      }
    }
    if (v.empty()) throw Error(Errc::DegeneratePolygon, "unbounded polygon degenerated");
    // Orientation: interior on the left of every travel direction (left turns only).
    auto dirs = travel_dirs(v);
    bool ccw = true;
    for (size_t i = 0; i + 1 < dirs.size(); ++i) {
      if (cross_r(dirs[i], dirs[i + 1]) <= Rational(0)) { ccw = false; break; }
    }
    if (!ccw) {
      std::reverse(v.begin(), v.end());
      std::swap(r_in, r_out);
      dirs = travel_dirs(v);
      for (size_t i = 0; i + 1 < dirs.size(); ++i) {
        if (cross_r(dirs[i], dirs[i + 1]) <= Rational(0))
          throw Error(Errc::DegeneratePolygon, "vertex path is not convex");
      }
    }
    poly.vertices_ = std::move(v);
    poly.rays_ = {r_in, r_out};
    // Facets aligned with edges: in-ray edge, interior edges, out-ray edge.
    auto push_facet = [&](const LatticeVector& dir, const Point& through) {
      LatticeVector n = rot_ccw(primitive_vector(dir));
      poly.halfplanes_.push_back({n, Rational(n.x) * through.x + Rational(n.y) * through.y});
    };
    push_facet(-r_in, poly.vertices_.front());
    for (size_t i = 0; i + 1 < poly.vertices_.size(); ++i) {
      LatticeVector dir = rational_direction(poly.vertices_[i], poly.vertices_[i + 1]).v;
      push_facet(dir, poly.vertices_[i]);
    }
    push_facet(r_out, poly.vertices_.back());
  }

  // Cross-check: H and V representations describe the same set.
  for (const Point& p : poly.vertices_) {
    int active = 0;
    for (const HalfPlane& h : poly.halfplanes_) {
      Rational e = h.eval(p);
      if (e < Rational(0)) throw Error(Errc::DegeneratePolygon, "vertex violates a facet");
      if (e == Rational(0)) active++;
    }
    if (active != 2) throw Error(Errc::DegeneratePolygon, "vertex not on exactly two facets");
  }
  for (const HalfPlane& h : poly.halfplanes_) {
    for (const LatticeVector& r : poly.rays_) {
      // Recession directions must be admissible for every facet.
      if (dot(h.normal, r) < 0) throw Error(Errc::DegeneratePolygon, "ray escapes a facet");
    }
  }
  return poly;
}

std::vector<Edge> RationalPolygon::edges() const {
  std::vector<Edge> out;
  if (bounded()) {
    for (size_t i = 0; i < vertices_.size(); ++i) {
      const Point& a = vertices_[i];
      const Point& b = vertices_[(i + 1) % vertices_.size()];
      out.push_back({a, b, rational_direction(a, b).v, halfplanes_[i]});
    }
  } else {
    out.push_back({std::nullopt, vertices_.front(), primitive_vector(-rays_[0]), halfplanes_[0]});
    for (size_t i = 0; i + 1 < vertices_.size(); ++i) {
      const Point& a = vertices_[i];
      const Point& b = vertices_[i + 1];
      out.push_back({a, b, rational_direction(a, b).v, halfplanes_[i + 1]});
    }
    out.push_back({vertices_.back(), std::nullopt, rays_[1], halfplanes_.back()});
  }
  return out;
}

bool RationalPolygon::contains(const Point& p) const {
  for (const HalfPlane& h : halfplanes_) {
    if (h.eval(p) < Rational(0)) return false;
  }
  return true;
}

bool RationalPolygon::strictly_contains(const Point& p) const {
  for (const HalfPlane& h : halfplanes_) {
    if (h.eval(p) <= Rational(0)) return false;
  }
  return true;
}

bool RationalPolygon::on_boundary(const Point& p) const {
  return contains(p) && !strictly_contains(p);
}

bool RationalPolygon::is_vertex(const Point& p) const {
  return std::find(vertices_.begin(), vertices_.end(), p) != vertices_.end();
}

Rational RationalPolygon::area() const {
  if (!bounded()) throw Error(Errc::OutOfRange, "area of an unbounded polygon");
  Rational s(0);
  for (size_t i = 0; i < vertices_.size(); ++i) {
    s += cross_r(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
  }
  return s / Rational(2);
}

SliceInterval RationalPolygon::slice_interval(const Rational& x0) const {
  bool has_lo = false, has_hi = false;
  Rational lo, hi;
  for (const HalfPlane& h : halfplanes_) {
    if (h.normal.y == 0) {
      if (Rational(h.normal.x) * x0 < h.offset)
        throw Error(Errc::OutOfRange, "x outside the polygon projection");
      continue;
    }
    Rational bound = (h.offset - Rational(h.normal.x) * x0) / Rational(h.normal.y);
    if (h.normal.y > 0) {
      if (!has_lo || bound > lo) { lo = bound; has_lo = true; }
    } else {
      if (!has_hi || bound < hi) { hi = bound; has_hi = true; }
    }
  }
  if (!has_lo || !has_hi)
    throw Error(Errc::InvalidArgument, "slice is unbounded");
  if (lo > hi) throw Error(Errc::OutOfRange, "x outside the polygon projection");
  return {lo, hi};
}

Rational RationalPolygon::min_x() const {
  for (const LatticeVector& r : rays_) {
    if (r.x < 0) throw Error(Errc::OutOfRange, "polygon unbounded to the left");
  }
  Rational m = vertices_.front().x;
  for (const Point& p : vertices_) {
    if (p.x < m) m = p.x;
  }
  return m;
}

Rational RationalPolygon::max_x() const {
  for (const LatticeVector& r : rays_) {
    if (r.x > 0) throw Error(Errc::OutOfRange, "polygon unbounded to the right");
  }
  Rational m = vertices_.front().x;
  for (const Point& p : vertices_) {
    if (p.x > m) m = p.x;
  }
  return m;
}

RayExit RationalPolygon::ray_exit(const Point& w, const LatticeVector& lambda) const {
  if (!is_primitive(lambda)) throw Error(Errc::NotPrimitive, "ray direction must be primitive");
  if (!contains(w)) throw Error(Errc::OutOfRange, "ray start outside the polygon");
  for (const HalfPlane& h : halfplanes_) {
    if (h.eval(w) == Rational(0) && dot(h.normal, lambda) <= 0)
      throw Error(Errc::NotInward, "ray does not enter the interior");
  }
  bool has_t = false;
  Rational t_exit;
  for (const HalfPlane& h : halfplanes_) {
    long long s = dot(h.normal, lambda);
    if (s >= 0) continue;
    Rational t = h.eval(w) / Rational(-s);
    if (!has_t || t < t_exit) { t_exit = t; has_t = true; }
  }
  if (!has_t) return {std::nullopt, std::nullopt};
  Point exit{w.x + t_exit * Rational(lambda.x), w.y + t_exit * Rational(lambda.y)};
  return {exit, t_exit};
}

bool RationalPolygon::rectangle_fits(const Point& anchor, const Rational& R, const Rational& h,
                                     const std::vector<Segment>& obstacles) const {
  if (R <= Rational(0) || h <= Rational(0))
    throw Error(Errc::InvalidArgument, "rectangle sides must be positive");
  const Point corners[4] = {
      anchor,
      {anchor.x + R, anchor.y},
      {anchor.x + R, anchor.y + h},
      {anchor.x, anchor.y + h},
  };
  for (const Point& c : corners) {
    if (!contains(c)) return false;
  }
  for (const Segment& s : obstacles) {
    if (open_rectangle_intersects_segment(anchor, R, h, s)) return false;
  }
  return true;
}

bool RationalPolygon::is_delzant_corner(const Point& vertex) const {
  auto it = std::find(vertices_.begin(), vertices_.end(), vertex);
  if (it == vertices_.end()) throw Error(Errc::InvalidArgument, "not a vertex");
  size_t i = static_cast<size_t>(it - vertices_.begin());
  LatticeVector d1, d2;
  if (bounded()) {
    size_t n = vertices_.size();
    d1 = rational_direction(vertex, vertices_[(i + n - 1) % n]).v;
    d2 = rational_direction(vertex, vertices_[(i + 1) % n]).v;
  } else {
    d1 = (i == 0) ? rays_[0] : rational_direction(vertex, vertices_[i - 1]).v;
    d2 = (i + 1 == vertices_.size()) ? rays_[1] : rational_direction(vertex, vertices_[i + 1]).v;
  }
  long long d = det(d1, d2);
  return d == 1 || d == -1;
}

std::optional<Rational> RationalPolygon::edge_affine_length(const Edge& e) {
  if (!e.bounded()) return std::nullopt;
  return affine_distance(*e.from, *e.to);
}

RationalPolygon affine_apply(const AffineMap& T, const RationalPolygon& poly) {
  std::vector<Point> verts;
  verts.reserve(poly.vertices().size());
  for (const Point& p : poly.vertices()) verts.push_back(T(p));
  std::vector<LatticeVector> rays;
  for (const LatticeVector& r : poly.rays()) rays.push_back(T.linear_map(r));
  // from_vertices re-orients when the map reverses orientation.
  return RationalPolygon::from_vertices(std::move(verts), std::move(rays));
}

}  // namespace probekit
