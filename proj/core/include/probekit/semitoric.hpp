#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "probekit/polygon.hpp"

namespace probekit {

/// Marked focus-focus value inside a polytope-invariant representative.
struct Node {
  Point position;
  int epsilon = -1;        // -1: cut goes down, +1: cut goes up
  long long multiplicity = 1;
  Rational height;         // vertical affine distance to the bottom boundary

  bool operator==(const Node& o) const {
    return position == o.position && epsilon == o.epsilon &&
           multiplicity == o.multiplicity && height == o.height;
  }
};

/// Representative of the polytope invariant: polygon plus decorated nodes.
/// Cuts run vertically from each node to the boundary (direction epsilon) and
/// must end in polygon vertices.
struct SemitoricPolygon {
  RationalPolygon polygon;
  std::vector<Node> nodes;  // sorted by (x, y)

  bool toric() const { return nodes.empty(); }
  bool operator==(const SemitoricPolygon& o) const {
    return polygon == o.polygon && nodes == o.nodes;
  }
};

/// Validates node placement, computes cut segments and heights.
/// Errors: NodeOnBoundary, CutCornerMissing, InvalidArgument (crossing cuts).
SemitoricPolygon make_semitoric(const RationalPolygon& polygon, std::vector<Node> nodes);

/// Vertical segment from the node to the boundary in its cut direction,
/// ordered with a.y <= b.y.
Segment cut_segment(const SemitoricPolygon& sp, size_t i);
std::vector<Segment> cut_segments(const SemitoricPolygon& sp);

bool point_on_segment(const Point& p, const Segment& s);

/// The piecewise map used when flipping node i: identity for x <= x_i and
/// (x, y) -> (x, y + slope*(x - x_i)) for x >= x_i.
struct PiecewiseShear {
  Rational x0;
  long long slope = 0;

  Point operator()(const Point& p) const {
    if (p.x <= x0) return p;
    return {p.x, p.y + Rational(slope) * (p.x - x0)};
  }
};

PiecewiseShear mutation_shear(const SemitoricPolygon& sp, size_t i);

/// Flips the cut direction of node i, shearing the half-plane x >= x_i.
/// Throws MutationBreaksConvexity when the image is not convex.
SemitoricPolygon mutate(const SemitoricPolygon& sp, size_t i);

struct SlideResult {
  SemitoricPolygon sp;
  Segment slid;  // fiber correspondence is void on this vertical segment
};

/// Moves node i along its eigenline to (x_i, y_new). Polygon unchanged.
SlideResult slide(const SemitoricPolygon& sp, size_t i, const Rational& y_new);

struct TradeResult {
  SemitoricPolygon sp;  // node i removed, polygon unchanged
  Segment excluded;     // former cut; fiber-type conclusions are invalid here
};

/// Exchanges node i and its cut for an honest corner. Requires the cut corner
/// to be Delzant and no other node on the cut (TradeBlocked otherwise).
TradeResult trade(const SemitoricPolygon& sp, size_t i);

struct DhRow {
  Rational x;
  bool skipped = false;     // vertical boundary edge at this x
  Rational left_slope;      // slope of the slice-width function left of x
  Rational right_slope;
  Rational jump;            // right - left
  Rational predicted;       // -sum k_j - e+ - e-
  bool match = false;
};

struct DhReport {
  std::vector<DhRow> rows;

  bool all_match() const {
    for (const DhRow& r : rows) {
      if (!r.skipped && !r.match) return false;
    }
    return true;
  }
};

/// Checks the Duistermaat-Heckman derivative jump at every critical x
/// (node lines and interior vertex lines) against the node multiplicities and
/// elliptic vertex weights read off the polygon.
DhReport dh_jump_report(const SemitoricPolygon& sp);

/// Requires a vertical-line-preserving map (lower-triangular linear part).
SemitoricPolygon affine_apply(const AffineMap& T, const SemitoricPolygon& sp);

}  // namespace probekit
