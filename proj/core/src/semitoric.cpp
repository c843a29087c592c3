#include "probekit/semitoric.hpp"

#include <algorithm>

#include "probekit/error.hpp"

namespace probekit {

namespace {

bool node_order(const Node& a, const Node& b) {
  if (a.position.x != b.position.x) return a.position.x < b.position.x;
  return a.position.y < b.position.y;
}

}  // namespace

SemitoricPolygon make_semitoric(const RationalPolygon& polygon, std::vector<Node> nodes) {
  std::sort(nodes.begin(), nodes.end(), node_order);
  for (Node& n : nodes) {
    if (n.multiplicity < 1) throw Error(Errc::InvalidArgument, "node multiplicity must be >= 1");
    if (n.epsilon != 1 && n.epsilon != -1)
      throw Error(Errc::InvalidArgument, "node cut sign must be +1 or -1");
    if (!polygon.strictly_contains(n.position))
      throw Error(Errc::NodeOnBoundary, "node must lie in the polygon interior");
    SliceInterval s = polygon.slice_interval(n.position.x);
    Point corner{n.position.x, n.epsilon > 0 ? s.hi : s.lo};
    if (!polygon.is_vertex(corner))
      throw Error(Errc::CutCornerMissing, "cut endpoint is not a polygon vertex");
    n.height = n.position.y - s.lo;
  }
  // Same-line cuts must be nested: every downward cut below every upward cut.
  for (size_t i = 0; i < nodes.size(); ++i) {
    for (size_t j = i + 1; j < nodes.size(); ++j) {
      if (nodes[i].position.x != nodes[j].position.x) continue;
      if (nodes[i].position == nodes[j].position)
        throw Error(Errc::InvalidArgument, "coincident nodes");
      if (nodes[i].epsilon == 1 && nodes[j].epsilon == -1)
        throw Error(Errc::InvalidArgument, "crossing cut assignment on a vertical line");
    }
  }
  return SemitoricPolygon{polygon, std::move(nodes)};
}

Segment cut_segment(const SemitoricPolygon& sp, size_t i) {
  if (i >= sp.nodes.size()) throw Error(Errc::InvalidArgument, "node index out of range");
  const Node& n = sp.nodes[i];
  SliceInterval s = sp.polygon.slice_interval(n.position.x);
  if (n.epsilon > 0) return {n.position, Point{n.position.x, s.hi}};
  return {Point{n.position.x, s.lo}, n.position};
}

std::vector<Segment> cut_segments(const SemitoricPolygon& sp) {
  std::vector<Segment> out;
  out.reserve(sp.nodes.size());
  for (size_t i = 0; i < sp.nodes.size(); ++i) out.push_back(cut_segment(sp, i));
  return out;
}

bool point_on_segment(const Point& p, const Segment& s) {
  if (s.degenerate()) return p == s.a;
  Rational cross = (s.b.x - s.a.x) * (p.y - s.a.y) - (s.b.y - s.a.y) * (p.x - s.a.x);
  if (cross != Rational(0)) return false;
  Rational d = (p.x - s.a.x) * (s.b.x - s.a.x) + (p.y - s.a.y) * (s.b.y - s.a.y);
  Rational len2 = (s.b.x - s.a.x) * (s.b.x - s.a.x) + (s.b.y - s.a.y) * (s.b.y - s.a.y);
  return d >= Rational(0) && d <= len2;
}

PiecewiseShear mutation_shear(const SemitoricPolygon& sp, size_t i) {
  if (i >= sp.nodes.size()) throw Error(Errc::InvalidArgument, "node index out of range");
  const Node& n = sp.nodes[i];
  return PiecewiseShear{n.position.x, n.epsilon * n.multiplicity};
}

SemitoricPolygon mutate(const SemitoricPolygon& sp, size_t i) {
  PiecewiseShear shear = mutation_shear(sp, i);
  const Rational& x0 = shear.x0;
  const RationalPolygon& poly = sp.polygon;

  // Boundary path with the x = x0 crossings inserted, so the piecewise map
  // sends straight pieces to straight pieces.
  std::vector<Point> path;
  auto maybe_insert_crossing = [&](const Point& a, const Point& b) {
    if ((a.x < x0 && b.x > x0) || (a.x > x0 && b.x < x0)) {
      Rational t = (x0 - a.x) / (b.x - a.x);
      path.push_back({x0, a.y + t * (b.y - a.y)});
    }
  };

  std::vector<LatticeVector> rays = poly.rays();
  if (poly.bounded()) {
    const auto& v = poly.vertices();
    for (size_t k = 0; k < v.size(); ++k) {
      path.push_back(v[k]);
      maybe_insert_crossing(v[k], v[(k + 1) % v.size()]);
    }
  } else {
    const auto& v = poly.vertices();
    // Incoming ray edge crossing.
    const LatticeVector r_in = rays[0];
    if (r_in.x != 0) {
      Rational start = v.front().x;
      bool crosses = (r_in.x > 0 && x0 > start) || (r_in.x < 0 && x0 < start);
      if (crosses) {
        Rational t = (x0 - start) / Rational(r_in.x);
        path.push_back({x0, v.front().y + t * Rational(r_in.y)});
      }
    }
    for (size_t k = 0; k < v.size(); ++k) {
      path.push_back(v[k]);
      if (k + 1 < v.size()) maybe_insert_crossing(v[k], v[k + 1]);
    }
    const LatticeVector r_out = rays[1];
    if (r_out.x != 0) {
      Rational start = v.back().x;
      bool crosses = (r_out.x > 0 && x0 > start) || (r_out.x < 0 && x0 < start);
      if (crosses) {
        Rational t = (x0 - start) / Rational(r_out.x);
        path.push_back({x0, v.back().y + t * Rational(r_out.y)});
      }
    }
  }

  for (Point& p : path) p = shear(p);
  std::vector<LatticeVector> new_rays;
  if (!rays.empty()) {
    auto shear_ray = [&](const LatticeVector& r, const Point& attach) {
      bool right_side = attach.x > x0 || (attach.x == x0 && r.x > 0);
      if (!right_side) return r;
      return LatticeVector{r.x, r.y + shear.slope * r.x};
    };
    new_rays = {shear_ray(rays[0], path.front()), shear_ray(rays[1], path.back())};
  }

  RationalPolygon mutated;
  try {
    mutated = RationalPolygon::from_vertices(std::move(path), std::move(new_rays));
  } catch (const Error& e) {
    if (e.code() == Errc::DegeneratePolygon)
      throw Error(Errc::MutationBreaksConvexity, "sheared polygon is not convex");
    throw;
  }

  std::vector<Node> nodes = sp.nodes;
  for (size_t k = 0; k < nodes.size(); ++k) {
    nodes[k].position = shear(nodes[k].position);
    if (k == i) nodes[k].epsilon = -nodes[k].epsilon;
  }
  return make_semitoric(mutated, std::move(nodes));
}

SlideResult slide(const SemitoricPolygon& sp, size_t i, const Rational& y_new) {
  if (i >= sp.nodes.size()) throw Error(Errc::InvalidArgument, "node index out of range");
  const Node& n = sp.nodes[i];
  Point target{n.position.x, y_new};
  if (!sp.polygon.strictly_contains(target))
    throw Error(Errc::InvalidSlide, "slide target must stay in the interior");
  for (size_t j = 0; j < sp.nodes.size(); ++j) {
    if (j == i || sp.nodes[j].position.x != n.position.x) continue;
    Rational other = sp.nodes[j].position.y;
    if (other == y_new) throw Error(Errc::InvalidSlide, "slide target collides with a node");
    bool was_below = n.position.y < other;
    bool is_below = y_new < other;
    if (was_below != is_below) throw Error(Errc::InvalidSlide, "slide crosses another node");
  }
  std::vector<Node> nodes = sp.nodes;
  nodes[i].position = target;
  Segment slid = n.position.y <= y_new ? Segment{n.position, target} : Segment{target, n.position};
  return {make_semitoric(sp.polygon, std::move(nodes)), slid};
}

TradeResult trade(const SemitoricPolygon& sp, size_t i) {
  if (i >= sp.nodes.size()) throw Error(Errc::InvalidArgument, "node index out of range");
  Segment cut = cut_segment(sp, i);
  const Node& n = sp.nodes[i];
  Point corner = n.epsilon > 0 ? cut.b : cut.a;
  if (!sp.polygon.is_delzant_corner(corner))
    throw Error(Errc::TradeBlocked, "cut corner is not Delzant");
  for (size_t j = 0; j < sp.nodes.size(); ++j) {
    if (j != i && point_on_segment(sp.nodes[j].position, cut))
      throw Error(Errc::TradeBlocked, "another node lies on the cut");
  }
  std::vector<Node> nodes = sp.nodes;
  nodes.erase(nodes.begin() + static_cast<long>(i));
  return {make_semitoric(sp.polygon, std::move(nodes)), cut};
}

namespace {

// Slope change across a cut line with total decoration k(c): the continued
// boundary direction is T^{-sign(d_in.x) * k(c)} applied to d_in.
LatticeVector monodromy_continuation(const LatticeVector& d_in, long long kc) {
  long long sigma = d_in.x > 0 ? 1 : -1;
  long long m = -sigma * kc;
  return {d_in.x, d_in.y + m * d_in.x};
}

Rational width_at(const RationalPolygon& poly, const Rational& x) {
  return poly.slice_interval(x).width();
}

}  // namespace

DhReport dh_jump_report(const SemitoricPolygon& sp) {
  const RationalPolygon& poly = sp.polygon;

  // Projection endpoints, when bounded in that direction.
  std::optional<Rational> xmin, xmax;
  try { xmin = poly.min_x(); } catch (const Error&) {}
  try { xmax = poly.max_x(); } catch (const Error&) {}

  std::vector<Rational> critical;
  auto add_critical = [&](const Rational& x) {
    if (xmin && x <= *xmin) return;
    if (xmax && x >= *xmax) return;
    if (std::find(critical.begin(), critical.end(), x) == critical.end()) critical.push_back(x);
  };
  for (const Node& n : sp.nodes) add_critical(n.position.x);
  for (const Point& v : poly.vertices()) add_critical(v.x);
  std::sort(critical.begin(), critical.end());

  // Breakpoints of the slice-width function.
  std::vector<Rational> breaks;
  for (const Point& v : poly.vertices()) {
    if (std::find(breaks.begin(), breaks.end(), v.x) == breaks.end()) breaks.push_back(v.x);
  }
  std::sort(breaks.begin(), breaks.end());

  auto sample_left = [&](const Rational& x) {
    Rational lo = xmin ? *xmin : x - Rational(2);
    for (const Rational& b : breaks) {
      if (b < x && b > lo) lo = b;
    }
    return (lo + x) / Rational(2);
  };
  auto sample_right = [&](const Rational& x) {
    Rational hi = xmax ? *xmax : x + Rational(2);
    for (auto it = breaks.rbegin(); it != breaks.rend(); ++it) {
      if (*it > x && *it < hi) hi = *it;
    }
    return (x + hi) / Rational(2);
  };

  auto edges = poly.edges();
  DhReport report;
  for (const Rational& x : critical) {
    DhRow row;
    row.x = x;
    bool vertical_edge = false;
    for (const Edge& e : edges) {
      if (e.bounded() && e.from->x == x && e.to->x == x) vertical_edge = true;
    }
    if (vertical_edge) {
      row.skipped = true;
      report.rows.push_back(row);
      continue;
    }

    Rational ml = sample_left(x), mr = sample_right(x);
    row.left_slope = (width_at(poly, x) - width_at(poly, ml)) / (x - ml);
    row.right_slope = (width_at(poly, mr) - width_at(poly, x)) / (mr - x);
    row.jump = row.right_slope - row.left_slope;

    Rational predicted(0);
    for (const Node& n : sp.nodes) {
      if (n.position.x == x) predicted -= Rational(n.multiplicity);
    }
    SliceInterval s = poly.slice_interval(x);
    bool bad_weights = false;
    for (const Point& v : poly.vertices()) {
      if (v.x != x) continue;
      // Cut decoration ending at this vertex.
      long long kc = 0;
      for (size_t j = 0; j < sp.nodes.size(); ++j) {
        const Node& n = sp.nodes[j];
        if (n.position.x != x) continue;
        Segment cs = cut_segment(sp, j);
        Point corner = n.epsilon > 0 ? cs.b : cs.a;
        if (corner == v) kc += n.epsilon * n.multiplicity;
      }
      // Incoming/outgoing boundary directions at v along the traversal.
      LatticeVector d_in{}, d_out{};
      for (const Edge& e : edges) {
        if (e.to && *e.to == v) d_in = e.dir;
        if (e.from && *e.from == v) d_out = e.dir;
      }
      if (d_in.x == 0 || d_out.x == 0) { bad_weights = true; continue; }
      if (kc != 0 && d_out == monodromy_continuation(d_in, kc)) continue;  // pure cut corner
      // Genuine elliptic vertex (possibly underneath a cut end): the weights are
      // the first components of the primitive edge directions away from v.
      long long a = -d_in.x, b = d_out.x;
      predicted -= Rational(-1, a * b);
      (void)s;
    }
    if (bad_weights) {
      row.skipped = true;
      report.rows.push_back(row);
      continue;
    }
    row.predicted = predicted;
    row.match = (row.jump == row.predicted);
    report.rows.push_back(row);
  }
  return report;
}

SemitoricPolygon affine_apply(const AffineMap& T, const SemitoricPolygon& sp) {
  if (!T.preserves_verticals())
    throw Error(Errc::InvalidArgument, "map must preserve vertical lines");
  if (T.linear_part()[3] < 0)
    throw Error(Errc::InvalidArgument, "map must preserve the vertical orientation");
  RationalPolygon poly = affine_apply(T, sp.polygon);
  std::vector<Node> nodes = sp.nodes;
  for (Node& n : nodes) n.position = T(n.position);
  return make_semitoric(poly, std::move(nodes));
}

}  // namespace probekit
