#include "probekit/displace.hpp"

#include <algorithm>

#include "probekit/error.hpp"

namespace probekit {

const char* fact_kind_name(FactKind k) {
  switch (k) {
    case FactKind::Symmetry: return "symmetry";
    case FactKind::ExistenceNondisplaceable: return "existence-nondisplaceable";
    case FactKind::SuperheavyPoint: return "superheavy-point";
    case FactKind::ExternalNondisplaceable: return "external-nondisplaceable";
  }
  return "unknown";
}

FactKind fact_kind_from_name(const std::string& s) {
  if (s == "symmetry") return FactKind::Symmetry;
  if (s == "existence-nondisplaceable") return FactKind::ExistenceNondisplaceable;
  if (s == "superheavy-point") return FactKind::SuperheavyPoint;
  if (s == "external-nondisplaceable") return FactKind::ExternalNondisplaceable;
  throw Error(Errc::ParseError, "unknown fact kind '" + s + "'");
}

const char* status_name(Status s) {
  switch (s) {
    case Status::DisplaceableByProbe: return "displaceable-by-probe";
    case Status::DisplaceableByRectangle: return "displaceable-by-rectangle";
    case Status::DisplaceableByFact: return "displaceable-by-fact";
    case Status::NondisplaceableSphere: return "nondisplaceable-sphere";
    case Status::NondisplaceableStem: return "nondisplaceable-stem";
    case Status::NondisplaceableByFact: return "nondisplaceable-by-fact";
    case Status::Unknown: return "unknown";
  }
  return "unknown";
}

bool is_displaceable(Status s) {
  return s == Status::DisplaceableByProbe || s == Status::DisplaceableByRectangle ||
         s == Status::DisplaceableByFact;
}

namespace {

// Does the open probe piece {w + t*lambda : 0 < t < t_exit} meet the closed
// vertical segment? t_exit empty means an infinite probe.
bool probe_crosses_cut(const Point& w, const LatticeVector& lambda,
                       const std::optional<Rational>& t_exit, const Segment& cut) {
  const Rational xc = cut.a.x;
  if (lambda.x == 0) {
    if (w.x != xc) return false;
    // Both vertical: the closed cut t-range must meet the open (0, t_exit).
    Rational t0 = (cut.a.y - w.y) / Rational(lambda.y);
    Rational t1 = (cut.b.y - w.y) / Rational(lambda.y);
    if (t0 > t1) std::swap(t0, t1);
    if (t1 <= Rational(0)) return false;
    if (t_exit && t0 >= *t_exit) return false;
    return true;
  }
  Rational t = (xc - w.x) / Rational(lambda.x);
  if (t <= Rational(0)) return false;
  if (t_exit && t >= *t_exit) return false;
  Rational y = w.y + t * Rational(lambda.y);
  return y >= cut.a.y && y <= cut.b.y;
}

struct FacetLocation {
  size_t edge_index;
  HalfPlane support;
};

// w must sit in the relative interior of exactly one facet.
std::optional<FacetLocation> locate_facet(const RationalPolygon& poly, const Point& w) {
  if (!poly.contains(w)) return std::nullopt;
  int active = 0;
  for (const HalfPlane& h : poly.halfplanes()) {
    if (h.eval(w) == Rational(0)) active++;
  }
  if (active != 1) return std::nullopt;
  auto edges = poly.edges();
  for (size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].support.eval(w) == Rational(0)) return FacetLocation{i, edges[i].support};
  }
  return std::nullopt;
}

}  // namespace

Verdict probe_verdict(const SemitoricPolygon& sp, const Point& w,
                      const LatticeVector& lambda, const Point& u) {
  if (!is_primitive(lambda))
    throw Error(Errc::InvalidProbe, "probe direction must be primitive");
  auto loc = locate_facet(sp.polygon, w);
  if (!loc)
    throw Error(Errc::InvalidProbe, "probe start must lie in the relative interior of a facet");
  long long pairing = dot(lambda, loc->support.normal);
  if (pairing != 1 && pairing != -1)
    throw Error(Errc::InvalidProbe, "direction is not integrally transverse to the facet");
  if (pairing != 1)
    throw Error(Errc::InvalidProbe, "direction points out of the polygon");
  if (!sp.polygon.strictly_contains(u))
    throw Error(Errc::InvalidProbe, "target must be an interior point");
  // u = w + t * lambda with t > 0.
  Rational t;
  if (lambda.x != 0) {
    t = (u.x - w.x) / Rational(lambda.x);
    if (w.y + t * Rational(lambda.y) != u.y)
      throw Error(Errc::InvalidProbe, "target does not lie on the probe ray");
  } else {
    if (u.x != w.x) throw Error(Errc::InvalidProbe, "target does not lie on the probe ray");
    t = (u.y - w.y) / Rational(lambda.y);
  }
  if (t <= Rational(0)) throw Error(Errc::InvalidProbe, "target does not lie on the probe ray");

  RayExit exit;
  try {
    exit = sp.polygon.ray_exit(w, lambda);
  } catch (const Error& e) {
    throw Error(Errc::InvalidProbe, std::string("probe does not enter the interior: ") + e.what());
  }
  for (size_t i = 0; i < sp.nodes.size(); ++i) {
    if (probe_crosses_cut(w, lambda, exit.distance, cut_segment(sp, i)))
      throw Error(Errc::InvalidProbe, "probe crosses a cut");
  }

  Verdict v;
  v.probe = Probe{w, lambda, exit.point, exit.distance};
  if (!exit.distance || t < *exit.distance / Rational(2)) {
    v.status = Status::DisplaceableByProbe;
  } else {
    v.status = Status::Unknown;
  }
  return v;
}

Verdict probe_search(const SemitoricPolygon& sp, const Point& u, long long bound) {
  if (bound < 1) throw Error(Errc::InvalidArgument, "bound must be >= 1");
  if (!sp.polygon.strictly_contains(u)) return Verdict{};

  auto edges = sp.polygon.edges();
  for (const Edge& e : edges) {
    const LatticeVector n = e.support.normal;
    const Rational s = e.support.eval(u);  // = affine distance from u's facet line
    if (s <= Rational(0)) continue;
    // Integer base solution of <n, l> = 1.
    LatticeVector base;
    {
      long long a = n.x, b = n.y;
      long long x0 = 0, y0 = 0;
      // Extended gcd on (a, b); primitive normals give gcd 1.
      long long old_r = a, r = b, old_s = 1, ss = 0, old_t = 0, tt = 1;
      while (r != 0) {
        long long q = old_r / r;
        long long tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_s - q * ss; old_s = ss; ss = tmp;
        tmp = old_t - q * tt; old_t = tt; tt = tmp;
      }
      if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
      x0 = old_s; y0 = old_t;
      base = {x0, y0};
    }
    const LatticeVector step = rot_ccw(n);  // spans the lattice direction of the facet
    // Enumerate lambda = base + m*step with max-norm <= bound.
    for (long long m = -4 * bound - 8; m <= 4 * bound + 8; ++m) {
      LatticeVector lambda{base.x + m * step.x, base.y + m * step.y};
      if (lambda.x > bound || lambda.x < -bound || lambda.y > bound || lambda.y < -bound)
        continue;
      Point w{u.x - s * Rational(lambda.x), u.y - s * Rational(lambda.y)};
      // Must land in the relative interior of this facet.
      Rational along;
      bool on = false;
      if (e.bounded()) {
        Rational len = affine_distance(*e.from, *e.to);
        along = e.dir.x != 0 ? (w.x - e.from->x) / Rational(e.dir.x)
                             : (w.y - e.from->y) / Rational(e.dir.y);
        on = along > Rational(0) && along < len;
      } else if (e.to) {  // incoming ray edge
        along = e.dir.x != 0 ? (e.to->x - w.x) / Rational(e.dir.x)
                             : (e.to->y - w.y) / Rational(e.dir.y);
        on = along > Rational(0);
      } else {  // outgoing ray edge
        along = e.dir.x != 0 ? (w.x - e.from->x) / Rational(e.dir.x)
                             : (w.y - e.from->y) / Rational(e.dir.y);
        on = along > Rational(0);
      }
      if (!on) continue;
      try {
        Verdict v = probe_verdict(sp, w, lambda, u);
        if (v.status == Status::DisplaceableByProbe) return v;
      } catch (const Error&) {
        // invalid candidate probe
      }
    }
  }
  return Verdict{};
}

namespace {

// Edge directions leaving a vertex, in counterclockwise order.
std::pair<LatticeVector, LatticeVector> corner_directions(const RationalPolygon& poly,
                                                          const Point& v) {
  LatticeVector d_in{}, d_out{};
  for (const Edge& e : poly.edges()) {
    if (e.to && *e.to == v) d_in = e.dir;
    if (e.from && *e.from == v) d_out = e.dir;
  }
  return {LatticeVector{-d_in.x, -d_in.y}, d_out};
}

}  // namespace

Verdict ff_displaceable(const SemitoricPolygon& sp, size_t i) {
  if (i >= sp.nodes.size()) throw Error(Errc::InvalidArgument, "node index out of range");
  const Node& node = sp.nodes[i];
  if (node.multiplicity != 1)
    throw Error(Errc::InvalidArgument, "multiplicity >= 2: the sphere rule applies");
  Segment cut = cut_segment(sp, i);
  Point corner = node.epsilon > 0 ? cut.b : cut.a;
  if (!sp.polygon.is_delzant_corner(corner)) return Verdict{};

  auto [d1, d2] = corner_directions(sp.polygon, corner);
  for (int order = 0; order < 2; ++order) {
    LatticeVector u1 = order == 0 ? d1 : d2;
    LatticeVector u2 = order == 0 ? d2 : d1;
    AffineMap T;
    try {
      T = corner_normalization(u1, u2, corner);
    } catch (const Error&) {
      continue;
    }
    Point node_img = T(node.position);
    // The cut must normalize onto the diagonal so the displaced square
    // contains the node.
    if (node_img.x != node_img.y || node_img.x <= Rational(0)) continue;
    Rational h = node_img.x;

    RationalPolygon P = affine_apply(T, sp.polygon);
    std::vector<Segment> obstacles;
    for (size_t j = 0; j < sp.nodes.size(); ++j) {
      if (j != i) obstacles.push_back(T(cut_segment(sp, j)));
    }

    // Exact breakpoint sweep for the rectangle width.
    const Rational two_h = Rational(2) * h;
    std::vector<Rational> candidates;
    auto add_candidate = [&](const Rational& r) {
      if (r > two_h && std::find(candidates.begin(), candidates.end(), r) == candidates.end())
        candidates.push_back(r);
    };
    for (const Point& p : P.vertices()) add_candidate(p.x);
    for (const HalfPlane& hp : P.halfplanes()) {
      if (hp.normal.x == 0) continue;
      for (const Rational& y : {Rational(0), h}) {
        add_candidate((hp.offset - Rational(hp.normal.y) * y) / Rational(hp.normal.x));
      }
    }
    for (const Segment& s : obstacles) {
      add_candidate(s.a.x);
      add_candidate(s.b.x);
      // Crossings of the obstacle with the strip edges.
      if (s.a.y != s.b.y) {
        for (const Rational& y : {Rational(0), h}) {
          Rational t = (y - s.a.y) / (s.b.y - s.a.y);
          if (t >= Rational(0) && t <= Rational(1))
            add_candidate(s.a.x + t * (s.b.x - s.a.x));
        }
      }
    }
    add_candidate(two_h + Rational(1));
    std::sort(candidates.begin(), candidates.end());
    for (const Rational& R : candidates) {
      if (P.rectangle_fits(Point{Rational(0), Rational(0)}, R, h, obstacles)) {
        Verdict v;
        v.status = Status::DisplaceableByRectangle;
        v.rectangle = RectangleWitness{T, R, h};
        return v;
      }
    }
  }
  return Verdict{};
}

Configuration base_configuration(const SemitoricPolygon& sp) { return {sp, {}, {}, {}}; }

Configuration toric_closure(Configuration cfg) {
  bool progress = true;
  while (progress) {
    progress = false;
    for (size_t i = 0; i < cfg.sp.nodes.size(); ++i) {
      try {
        TradeResult tr = trade(cfg.sp, i);
        cfg.excluded.push_back(tr.excluded);
        cfg.ops.push_back({OpNote::Trade, i, Rational(0)});
        cfg.sp = tr.sp;
        progress = true;
        break;
      } catch (const Error&) {
        // not tradable
      }
    }
  }
  return cfg;
}

std::optional<Configuration> mutated_configuration(const SemitoricPolygon& sp, size_t i) {
  try {
    Configuration cfg = base_configuration(sp);
    PiecewiseShear shear = mutation_shear(sp, i);
    cfg.sp = mutate(sp, i);
    cfg.shears.push_back(shear);
    cfg.ops.push_back({OpNote::Mutate, i, Rational(0)});
    return cfg;
  } catch (const Error&) {
    return std::nullopt;
  }
}

Point transform_point(const Configuration& cfg, const Point& p) {
  Point q = p;
  for (const PiecewiseShear& s : cfg.shears) q = s(q);
  return q;
}

namespace {

bool on_any_segment(const Point& p, const std::vector<Segment>& segs) {
  for (const Segment& s : segs) {
    if (point_on_segment(p, s)) return true;
  }
  return false;
}

Verdict fact_verdict(const Point& u, const std::vector<Fact>& facts) {
  for (const Fact& f : facts) {
    switch (f.kind) {
      case FactKind::Symmetry:
        if (f.line_x && u.x != *f.line_x) {
          Verdict v;
          v.status = Status::DisplaceableByFact;
          v.fact = f;
          return v;
        }
        break;
      case FactKind::SuperheavyPoint:
        if (std::find(f.points.begin(), f.points.end(), u) != f.points.end()) {
          Verdict v;
          v.status = Status::NondisplaceableByFact;
          v.fact = f;
          return v;
        }
        break;
      case FactKind::ExternalNondisplaceable:
        if (f.segment && point_on_segment(u, *f.segment)) {
          Verdict v;
          v.status = Status::NondisplaceableByFact;
          v.fact = f;
          return v;
        }
        break;
      case FactKind::ExistenceNondisplaceable:
        break;  // no pointwise conclusion
    }
  }
  return Verdict{};
}

}  // namespace

Verdict classify(const SemitoricPolygon& sp, const Point& u,
                 const std::vector<Fact>& facts, const ClassifyOptions& opts) {
  if (!sp.polygon.contains(u)) throw Error(Errc::OutOfRange, "point outside the polygon");

  // (1) + (2): nodes.
  for (size_t i = 0; i < sp.nodes.size(); ++i) {
    if (sp.nodes[i].position != u) continue;
    if (sp.nodes[i].multiplicity >= 2) {
      Verdict v;
      v.status = Status::NondisplaceableSphere;
      return v;
    }
    Verdict v = ff_displaceable(sp, i);
    if (v.status == Status::DisplaceableByRectangle) return v;
    try {
      SemitoricPolygon spm = mutate(sp, i);
      for (size_t j = 0; j < spm.nodes.size(); ++j) {
        if (spm.nodes[j].position == u) {
          Verdict vm = ff_displaceable(spm, j);
          if (vm.status == Status::DisplaceableByRectangle) {
            vm.ops.push_back({OpNote::Mutate, i, Rational(0)});
            return vm;
          }
          break;
        }
      }
    } catch (const Error&) {
      // mutation unavailable
    }
    Verdict fv = fact_verdict(u, facts);
    if (fv.status != Status::Unknown) return fv;
    return Verdict{};
  }

  // (3): points on cuts move to a representative where they are regular.
  Configuration cfg = base_configuration(sp);
  Point u_cur = u;
  for (size_t guard = 0; guard <= sp.nodes.size(); ++guard) {
    std::optional<size_t> blocking;
    for (size_t i = 0; i < cfg.sp.nodes.size(); ++i) {
      if (cfg.sp.nodes[i].position != u_cur &&
          point_on_segment(u_cur, cut_segment(cfg.sp, i))) {
        blocking = i;
        break;
      }
    }
    if (!blocking) break;
    try {
      PiecewiseShear shear = mutation_shear(cfg.sp, *blocking);
      SemitoricPolygon next = mutate(cfg.sp, *blocking);
      cfg.shears.push_back(shear);
      cfg.ops.push_back({OpNote::Mutate, *blocking, Rational(0)});
      cfg.sp = next;
      u_cur = shear(u_cur);
    } catch (const Error&) {
      break;  // keep the blocked configuration; probes there will fail
    }
  }

  // (4): probe search, trying trades to clear remaining cuts.
  std::vector<Configuration> configs;
  configs.push_back(cfg);
  configs.push_back(toric_closure(cfg));
  for (Configuration& c : configs) {
    if (on_any_segment(u_cur, c.excluded)) continue;
    if (!c.sp.polygon.strictly_contains(u_cur)) continue;
    Verdict v = probe_search(c.sp, u_cur, opts.bound);
    if (v.status == Status::DisplaceableByProbe) {
      v.ops = c.ops;
      return v;
    }
  }

  // Slide retries, when the caller allows a range.
  if (opts.slide_range && *opts.slide_range > Rational(0)) {
    const Rational r = *opts.slide_range;
    for (const Configuration& c : configs) {
      if (on_any_segment(u_cur, c.excluded)) continue;
      for (size_t j = 0; j < c.sp.nodes.size(); ++j) {
        for (int dir : {-1, 1}) {
          Rational target = c.sp.nodes[j].position.y + Rational(dir) * r;
          try {
            SlideResult sr = slide(c.sp, j, target);
            if (point_on_segment(u_cur, sr.slid)) continue;
            Verdict v = probe_search(sr.sp, u_cur, opts.bound);
            if (v.status == Status::DisplaceableByProbe) {
              v.ops = c.ops;
              v.ops.push_back({OpNote::Slide, j, target});
              return v;
            }
          } catch (const Error&) {
            // slide unavailable
          }
        }
      }
    }
  }

  // (5): facts.
  Verdict fv = fact_verdict(u, facts);
  if (fv.status != Status::Unknown) return fv;
  return Verdict{};
}

bool revalidate_probe_witness(const SemitoricPolygon& sp, const Point& u, const Verdict& v) {
  if (v.status != Status::DisplaceableByProbe || !v.probe) return false;
  SemitoricPolygon cur = sp;
  Point u_cur = u;
  try {
    for (const OpNote& op : v.ops) {
      switch (op.kind) {
        case OpNote::Mutate: {
          PiecewiseShear shear = mutation_shear(cur, op.node);
          cur = mutate(cur, op.node);
          u_cur = shear(u_cur);
          break;
        }
        case OpNote::Trade:
          cur = trade(cur, op.node).sp;
          break;
        case OpNote::Slide:
          cur = slide(cur, op.node, op.slide_to).sp;
          break;
      }
    }
    Verdict check = probe_verdict(cur, v.probe->start, v.probe->dir, u_cur);
    return check.status == Status::DisplaceableByProbe;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace probekit
