#include "probekit/scan.hpp"

#include <algorithm>

#include "probekit/error.hpp"

namespace probekit {

namespace {

// ---------------------------------------------------------------------------
// Exact coverage primitives: convex pieces with open/closed sides, traced as
// parameter intervals over test segments.

struct LinearConstraint {
  Rational a, b, c;  // a*x + b*y >= c, strict when 'strict'
  bool strict = false;
};

struct ConvexPiece {
  std::vector<LinearConstraint> cons;

  bool contains(const Point& p) const {
    for (const LinearConstraint& lc : cons) {
      Rational v = lc.a * p.x + lc.b * p.y - lc.c;
      if (lc.strict ? v <= Rational(0) : v < Rational(0)) return false;
    }
    return true;
  }
};

struct QI {
  Rational lo, hi;
  bool lo_open = false, hi_open = false;

  bool empty() const { return lo > hi || (lo == hi && (lo_open || hi_open)); }
};

// Trace of a convex piece over p(tau) = A + tau*(B-A), tau in [0,1].
std::optional<QI> trace_piece(const ConvexPiece& piece, const Point& A, const Point& B) {
  QI q{Rational(0), Rational(1), false, false};
  Rational dx = B.x - A.x, dy = B.y - A.y;
  for (const LinearConstraint& lc : piece.cons) {
    Rational f0 = lc.a * A.x + lc.b * A.y - lc.c;
    Rational df = lc.a * dx + lc.b * dy;
    if (df == Rational(0)) {
      bool ok = lc.strict ? f0 > Rational(0) : f0 >= Rational(0);
      if (!ok) return std::nullopt;
      continue;
    }
    Rational t = -f0 / df;
    if (df > Rational(0)) {
      if (t > q.lo || (t == q.lo && lc.strict && !q.lo_open)) {
        q.lo = t;
        q.lo_open = lc.strict;
      } else if (t == q.lo && lc.strict) {
        q.lo_open = true;
      }
    } else {
      if (t < q.hi || (t == q.hi && lc.strict && !q.hi_open)) {
        q.hi = t;
        q.hi_open = lc.strict;
      } else if (t == q.hi && lc.strict) {
        q.hi_open = true;
      }
    }
  }
  if (q.empty()) return std::nullopt;
  return q;
}

// Subtract a closed sub-interval (or point) from every interval in the list.
void subtract_interval(std::vector<QI>& list, const Rational& lo, const Rational& hi) {
  std::vector<QI> out;
  for (const QI& q : list) {
    if (hi < q.lo || lo > q.hi) {
      out.push_back(q);
      continue;
    }
    QI left{q.lo, lo, q.lo_open, true};
    QI right{hi, q.hi, true, q.hi_open};
    if (!left.empty()) out.push_back(left);
    if (!right.empty()) out.push_back(right);
  }
  list = std::move(out);
}

std::vector<QI> merge_intervals(std::vector<QI> v) {
  v.erase(std::remove_if(v.begin(), v.end(), [](const QI& q) { return q.empty(); }), v.end());
  std::sort(v.begin(), v.end(), [](const QI& a, const QI& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return !a.lo_open && b.lo_open;
  });
  std::vector<QI> out;
  for (const QI& q : v) {
    if (out.empty()) {
      out.push_back(q);
      continue;
    }
    QI& last = out.back();
    bool attaches = q.lo < last.hi || (q.lo == last.hi && !(q.lo_open && last.hi_open));
    if (attaches) {
      if (q.hi > last.hi || (q.hi == last.hi && !q.hi_open)) {
        last.hi = q.hi;
        last.hi_open = q.hi_open;
      }
    } else {
      out.push_back(q);
    }
  }
  return out;
}

// [0,1] must be covered except possibly at the allowed parameter values.
bool covers_unit(std::vector<QI> intervals, const std::vector<Rational>& allowed) {
  auto allowed_at = [&](const Rational& t) {
    return std::find(allowed.begin(), allowed.end(), t) != allowed.end();
  };
  std::vector<QI> merged = merge_intervals(std::move(intervals));
  Rational pos(0);
  bool pending = true;  // pos itself not yet covered
  for (const QI& q : merged) {
    if (q.hi < pos || (q.hi == pos && q.hi_open && pending)) continue;
    if (q.lo > pos) return false;  // positive-length gap
    if (q.lo == pos) {
      if (q.lo_open && pending && !allowed_at(pos)) return false;
    }
    if (q.hi > pos || (q.hi == pos && !q.hi_open)) {
      pos = q.hi;
      pending = q.hi_open;
    }
    if (pos > Rational(1) || (pos == Rational(1) && !pending)) return true;
  }
  if (pos < Rational(1)) return false;
  return !pending || allowed_at(Rational(1));
}

// ---------------------------------------------------------------------------
// Probe families: the exact displaceable open set swept by all probes in one
// axis direction from one facet, cut-blocked probe lines removed.

struct Lin {
  Rational a, b;  // a + b*sigma
  Rational at(const Rational& s) const { return a + b * s; }
};

struct FamilyContext {
  Point base;
  LatticeVector d;       // facet sweep direction, w(sigma) = base + sigma*d
  LatticeVector lambda;  // probe direction
  HalfPlane facet;
  std::optional<Rational> L;  // sweep length (relative interior is (0, L))
  std::vector<Lin> exits;
};

Point sweep_point(const FamilyContext& fc, const Rational& s) {
  return {fc.base.x + s * Rational(fc.d.x), fc.base.y + s * Rational(fc.d.y)};
}

std::optional<Rational> exit_at(const FamilyContext& fc, const Rational& s) {
  std::optional<Rational> best;
  for (const Lin& e : fc.exits) {
    Rational t = e.at(s);
    if (!best || t < *best) best = t;
  }
  return best;
}

bool probe_blocked_at(const FamilyContext& fc, const Rational& s,
                      const std::vector<Segment>& cuts) {
  Point w = sweep_point(fc, s);
  std::optional<Rational> t_exit = exit_at(fc, s);
  for (const Segment& cut : cuts) {
    const Rational xc = cut.a.x;
    if (fc.lambda.x == 0) {
      if (w.x != xc) continue;
      Rational t0 = (cut.a.y - w.y) / Rational(fc.lambda.y);
      Rational t1 = (cut.b.y - w.y) / Rational(fc.lambda.y);
      if (t0 > t1) std::swap(t0, t1);
      if (t1 <= Rational(0)) continue;
      if (t_exit && t0 >= *t_exit) continue;
      return true;
    }
    Rational t = (xc - w.x) / Rational(fc.lambda.x);
    if (t <= Rational(0)) continue;
    if (t_exit && t >= *t_exit) continue;
    Rational y = w.y + t * Rational(fc.lambda.y);
    if (y >= cut.a.y && y <= cut.b.y) return true;
  }
  return false;
}

void build_family_pieces(const SemitoricPolygon& sp, const LatticeVector& lambda,
                         std::vector<ConvexPiece>& out) {
  const std::vector<Segment> cuts = cut_segments(sp);
  for (const Edge& e : sp.polygon.edges()) {
    if (dot(e.support.normal, lambda) != 1) continue;
    FamilyContext fc;
    fc.lambda = lambda;
    fc.facet = e.support;
    if (e.bounded()) {
      fc.base = *e.from;
      fc.d = e.dir;
      fc.L = affine_distance(*e.from, *e.to);
    } else if (e.to) {
      fc.base = *e.to;
      fc.d = -e.dir;
    } else {
      fc.base = *e.from;
      fc.d = e.dir;
    }
    for (const HalfPlane& g : sp.polygon.halfplanes()) {
      long long sgl = dot(g.normal, lambda);
      if (sgl >= 0) continue;
      Rational den(-sgl);
      Rational a = (Rational(g.normal.x) * fc.base.x + Rational(g.normal.y) * fc.base.y -
                    g.offset) / den;
      Rational b = Rational(dot(g.normal, fc.d)) / den;
      fc.exits.push_back({a, b});
    }

    // Breakpoints of the sweep: exit crossings plus cut-block boundaries.
    std::vector<Rational> breaks;
    auto add_break = [&](const Rational& s) {
      if (s <= Rational(0)) return;
      if (fc.L && s >= *fc.L) return;
      if (std::find(breaks.begin(), breaks.end(), s) == breaks.end()) breaks.push_back(s);
    };
    for (size_t i = 0; i < fc.exits.size(); ++i) {
      for (size_t j = i + 1; j < fc.exits.size(); ++j) {
        if (fc.exits[i].b == fc.exits[j].b) continue;
        add_break((fc.exits[j].a - fc.exits[i].a) / (fc.exits[i].b - fc.exits[j].b));
      }
    }
    auto root_of = [&](const Rational& v0, const Rational& dv, const Rational& target) {
      // v0 + dv*s = target
      if (dv == Rational(0)) return;
      add_break((target - v0) / dv);
    };
    for (const Segment& cut : cuts) {
      if (lambda.x == 0) {
        root_of(fc.base.x, Rational(fc.d.x), cut.a.x);
      } else {
        root_of(fc.base.y, Rational(fc.d.y), cut.a.y);
        root_of(fc.base.y, Rational(fc.d.y), cut.b.y);
        root_of(fc.base.x, Rational(fc.d.x), cut.a.x);
        // t*(s) == t_exit boundaries, per exit candidate.
        for (const Lin& ex : fc.exits) {
          // (cut.x - w.x(s))/lambda.x == ex.a + ex.b s  (linear in s)
          Rational lhs0 = (cut.a.x - fc.base.x) / Rational(lambda.x);
          Rational lhsd = Rational(-fc.d.x) / Rational(lambda.x);
          root_of(lhs0 - ex.a, lhsd - ex.b, Rational(0));
        }
      }
    }
    std::sort(breaks.begin(), breaks.end());

    std::vector<std::pair<Rational, std::optional<Rational>>> stations;  // [lo, hi?]
    Rational prev(0);
    for (const Rational& b : breaks) {
      stations.push_back({prev, b});
      prev = b;
    }
    if (fc.L) stations.push_back({prev, *fc.L});
    else stations.push_back({prev, std::nullopt});

    for (const auto& [slo, shi] : stations) {
      if (shi && *shi <= slo) continue;
      Rational mid = shi ? (slo + *shi) / Rational(2) : slo + Rational(1);
      if (probe_blocked_at(fc, mid, cuts)) continue;

      // Exit law on this subinterval (argmin at the midpoint).
      std::optional<Lin> exit;
      {
        std::optional<Rational> best;
        for (const Lin& ex : fc.exits) {
          Rational t = ex.at(mid);
          if (!best || t < *best) {
            best = t;
            exit = ex;
          }
        }
      }

      ConvexPiece piece;
      const LatticeVector n = fc.facet.normal;
      // On or inside the facet line (t >= 0).
      piece.cons.push_back({Rational(n.x), Rational(n.y), fc.facet.offset, false});
      // sigma(p) as a linear functional.
      Rational dd(det(fc.d, fc.lambda));
      Rational sx = Rational(fc.lambda.y) / dd;
      Rational sy = Rational(-fc.lambda.x) / dd;
      Rational s0 = -(sx * fc.base.x + sy * fc.base.y);
      auto sigma_const = [&](const Rational& bound, bool lower, bool strict_flag) {
        // lower: sigma >= bound, else sigma <= bound
        if (lower) piece.cons.push_back({sx, sy, bound - s0, strict_flag});
        else piece.cons.push_back({-sx, -sy, s0 - bound, strict_flag});
      };
      auto boundary_valid = [&](const Rational& s) {
        if (s <= Rational(0)) return false;
        if (fc.L && s >= *fc.L) return false;
        return !probe_blocked_at(fc, s, cuts);
      };
      sigma_const(slo, true, !boundary_valid(slo));
      if (shi) sigma_const(*shi, false, !boundary_valid(*shi));
      if (exit) {
        // 2*t(p) < exit.a + exit.b * sigma(p), with t(p) = <n,p> - c.
        Rational A = exit->b * sx - Rational(2) * Rational(n.x);
        Rational B = exit->b * sy - Rational(2) * Rational(n.y);
        Rational C = -(exit->a + exit->b * s0 + Rational(2) * fc.facet.offset);
        piece.cons.push_back({A, B, C, true});
      }
      out.push_back(piece);
    }
  }
}

// ---------------------------------------------------------------------------

struct CoverageSource {
  Configuration cfg;
  std::vector<ConvexPiece> pieces;  // in the configuration's frame
};

std::vector<Rational> grid_values(const Rational& lo, const Rational& hi, const Rational& res) {
  std::vector<Rational> out;
  Rational k = (lo / res).ceil();
  for (Rational x = k * res; x <= hi; x += res) out.push_back(x);
  return out;
}

// Splits [A, B] at the shear lines of cfg and collects coverage tau-intervals.
void trace_through_config(const CoverageSource& src, const Point& A, const Point& B,
                          std::vector<QI>& out) {
  // Sub-segment parameters where the chord crosses a shear line.
  std::vector<Rational> taus{Rational(0), Rational(1)};
  if (A.x != B.x) {
    for (const PiecewiseShear& s : src.cfg.shears) {
      Rational t = (s.x0 - A.x) / (B.x - A.x);
      if (t > Rational(0) && t < Rational(1) &&
          std::find(taus.begin(), taus.end(), t) == taus.end())
        taus.push_back(t);
    }
  }
  std::sort(taus.begin(), taus.end());
  auto at = [&](const Rational& t) {
    return Point{A.x + t * (B.x - A.x), A.y + t * (B.y - A.y)};
  };
  for (size_t i = 0; i + 1 < taus.size(); ++i) {
    Rational ta = taus[i], tb = taus[i + 1];
    Point Pa = transform_point(src.cfg, at(ta));
    Point Pb = transform_point(src.cfg, at(tb));
    if (Pa == Pb) continue;
    std::vector<QI> local;
    for (const ConvexPiece& piece : src.pieces) {
      auto q = trace_piece(piece, Pa, Pb);
      if (q) local.push_back(*q);
    }
    // Remove excluded-segment overlaps (verdicts withheld there).
    for (const Segment& ex : src.cfg.excluded) {
      // Intersection of [Pa,Pb] with the vertical excluded segment.
      Rational dx = Pb.x - Pa.x, dy = Pb.y - Pa.y;
      if (dx == Rational(0)) {
        if (Pa.x != ex.a.x) continue;
        // collinear vertical overlap in local tau
        Rational t0 = (ex.a.y - Pa.y) / dy;
        Rational t1 = (ex.b.y - Pa.y) / dy;
        if (t0 > t1) std::swap(t0, t1);
        subtract_interval(local, std::max(t0, Rational(0)), std::min(t1, Rational(1)));
      } else {
        Rational t = (ex.a.x - Pa.x) / dx;
        if (t < Rational(0) || t > Rational(1)) continue;
        Rational y = Pa.y + t * dy;
        if (y < ex.a.y || y > ex.b.y) continue;
        subtract_interval(local, t, t);
      }
    }
    // Map local tau back to the chord parameter.
    for (const QI& q : local) {
      out.push_back({ta + q.lo * (tb - ta), ta + q.hi * (tb - ta), q.lo_open, q.hi_open});
    }
  }
}

bool point_covered(const CoverageSource& src, const Point& p) {
  Point q = transform_point(src.cfg, p);
  for (const Segment& ex : src.cfg.excluded) {
    if (point_on_segment(q, ex)) return false;
  }
  for (const ConvexPiece& piece : src.pieces) {
    if (piece.contains(q)) return true;
  }
  return false;
}

}  // namespace

std::vector<Point> ScanReport::uncertified() const {
  std::vector<Point> out;
  for (const ReportEntry& e : entries) {
    if (e.verdict.status == Status::Unknown) out.push_back(e.point);
  }
  return out;
}

std::map<std::string, int> ScanReport::counts() const {
  std::map<std::string, int> out;
  for (const ReportEntry& e : entries) out[status_name(e.verdict.status)]++;
  return out;
}

ScanReport scan(const SemitoricPolygon& sp, const std::vector<Fact>& facts,
                const ScanOptions& opts) {
  if (opts.resolution <= Rational(0))
    throw Error(Errc::InvalidArgument, "resolution must be positive");
  const RationalPolygon& poly = sp.polygon;
  if (!poly.bounded() && !opts.window)
    throw Error(Errc::NeedsWindow, "unbounded polygon requires an x-window");

  Rational xlo, xhi;
  if (poly.bounded()) {
    xlo = poly.min_x();
    xhi = poly.max_x();
    if (opts.window) {
      xlo = std::max(xlo, opts.window->first);
      xhi = std::min(xhi, opts.window->second);
    }
  } else {
    xlo = opts.window->first;
    xhi = opts.window->second;
  }

  ScanReport report;
  report.resolution = opts.resolution;
  report.bound = opts.bound;

  ClassifyOptions copts;
  copts.bound = opts.bound;
  copts.slide_range = opts.slide_range;

  for (const Rational& x : grid_values(xlo, xhi, opts.resolution)) {
    SliceInterval sl;
    try {
      sl = poly.slice_interval(x);
    } catch (const Error&) {
      continue;
    }
    for (const Rational& y : grid_values(sl.lo, sl.hi, opts.resolution)) {
      Point u{x, y};
      if (!poly.strictly_contains(u)) continue;
      bool is_node = false;
      for (const Node& n : sp.nodes) {
        if (n.position == u) is_node = true;
      }
      if (is_node) continue;  // nodes handled separately below
      report.entries.push_back({u, classify(sp, u, facts, copts), false});
    }
  }
  for (const Node& n : sp.nodes) {
    report.entries.push_back({n.position, classify(sp, n.position, facts, copts), true});
  }

  // Stem inference.
  if (!opts.compact || !poly.bounded()) return report;
  std::vector<size_t> unknown_idx;
  for (size_t i = 0; i < report.entries.size(); ++i) {
    if (report.entries[i].verdict.status == Status::Unknown) unknown_idx.push_back(i);
  }
  if (unknown_idx.size() != 1) return report;
  const Point star = report.entries[unknown_idx[0]].point;

  // Coverage sources: probe families over the reachable configurations.
  std::vector<Configuration> cfgs;
  cfgs.push_back(base_configuration(sp));
  cfgs.push_back(toric_closure(base_configuration(sp)));
  for (size_t i = 0; i < sp.nodes.size(); ++i) {
    if (auto m = mutated_configuration(sp, i)) {
      cfgs.push_back(*m);
      cfgs.push_back(toric_closure(*m));
    }
  }
  const LatticeVector dirs[4] = {{0, 1}, {0, -1}, {1, 0}, {-1, 0}};
  std::vector<CoverageSource> sources;
  for (const Configuration& c : cfgs) {
    CoverageSource src{c, {}};
    for (const LatticeVector& d : dirs) build_family_pieces(c.sp, d, src.pieces);
    sources.push_back(std::move(src));
  }
  // Fact regions (displaceable kinds only) live in the base frame.
  CoverageSource fact_src{base_configuration(sp), {}};
  for (const Fact& f : facts) {
    if (f.kind == FactKind::Symmetry && f.line_x) {
      fact_src.pieces.push_back({{{Rational(-1), Rational(0), -*f.line_x, true}}});
      fact_src.pieces.push_back({{{Rational(1), Rational(0), *f.line_x, true}}});
    }
  }
  sources.push_back(std::move(fact_src));

  // Exceptions: the candidate itself, certified nodes, and true elliptic
  // vertices (their fibers are single points).
  std::vector<Point> exceptions{star};
  for (size_t i = 0; i < sp.nodes.size(); ++i) exceptions.push_back(sp.nodes[i].position);
  {
    std::vector<Point> cut_corners;
    for (size_t i = 0; i < sp.nodes.size(); ++i) {
      Segment cs = cut_segment(sp, i);
      cut_corners.push_back(sp.nodes[i].epsilon > 0 ? cs.b : cs.a);
    }
    for (const Point& v : poly.vertices()) {
      if (std::find(cut_corners.begin(), cut_corners.end(), v) == cut_corners.end())
        exceptions.push_back(v);
    }
  }

  auto check_chord = [&](const Point& A, const Point& B) {
    if (A == B) {
      for (const Point& e : exceptions) {
        if (e == A) return true;
      }
      for (const CoverageSource& src : sources) {
        if (point_covered(src, A)) return true;
      }
      return false;
    }
    std::vector<QI> intervals;
    for (const CoverageSource& src : sources) trace_through_config(src, A, B, intervals);
    std::vector<Rational> allowed;
    Rational dx = B.x - A.x, dy = B.y - A.y;
    for (const Point& e : exceptions) {
      Rational t;
      if (dx != Rational(0)) {
        t = (e.x - A.x) / dx;
        if (A.y + t * dy != e.y) continue;
      } else {
        if (e.x != A.x) continue;
        t = (e.y - A.y) / dy;
      }
      if (t >= Rational(0) && t <= Rational(1)) allowed.push_back(t);
    }
    return covers_unit(std::move(intervals), allowed);
  };

  bool covered = true;
  for (const Rational& x : grid_values(xlo, xhi, opts.resolution)) {
    try {
      SliceInterval sl = poly.slice_interval(x);
      if (!check_chord({x, sl.lo}, {x, sl.hi})) { covered = false; break; }
    } catch (const Error&) {
      continue;
    }
  }
  if (covered) {
    Rational ylo = poly.vertices().front().y, yhi = ylo;
    for (const Point& v : poly.vertices()) {
      ylo = std::min(ylo, v.y);
      yhi = std::max(yhi, v.y);
    }
    for (const Rational& y : grid_values(ylo, yhi, opts.resolution)) {
      // Horizontal extent at height y.
      bool has_lo = false, has_hi = false;
      Rational lo, hi;
      bool feasible = true;
      for (const HalfPlane& h : poly.halfplanes()) {
        if (h.normal.x == 0) {
          if (Rational(h.normal.y) * y < h.offset) { feasible = false; break; }
          continue;
        }
        Rational bound = (h.offset - Rational(h.normal.y) * y) / Rational(h.normal.x);
        if (h.normal.x > 0) {
          if (!has_lo || bound > lo) { lo = bound; has_lo = true; }
        } else {
          if (!has_hi || bound < hi) { hi = bound; has_hi = true; }
        }
      }
      if (!feasible || !has_lo || !has_hi || lo > hi) continue;
      if (!check_chord({lo, y}, {hi, y})) { covered = false; break; }
    }
  }
  if (covered) {
    report.entries[unknown_idx[0]].verdict.status = Status::NondisplaceableStem;
    report.stem_inference_applied = true;
  }
  return report;
}

}  // namespace probekit
