#pragma once

#include <optional>
#include <vector>

#include "probekit/semitoric.hpp"

namespace probekit {

/// One node whose eigenline sits at a station: cut sign, multiplicity and the
/// height of the node above the bottom boundary.
struct SolveNode {
  int epsilon = -1;
  long long k = 1;
  Rational height;
};

/// Isotropy weights of an elliptic vertex, read as the first components of the
/// primitive edge directions leaving the vertex.
struct SolveWeights {
  long long a = 0;
  long long b = 0;
};

/// Interior critical line of the combinatorics: nodes on it plus elliptic
/// vertices projecting onto it (top/bottom boundary).
struct SolveStation {
  Rational x;
  std::vector<SolveNode> nodes;
  std::optional<SolveWeights> top_vertex;
  std::optional<SolveWeights> bottom_vertex;
};

/// Combinatorial data determining one representative: critical stations with
/// their decorations, the two extreme verticals (length 0 encodes a corner
/// where top and bottom chains meet), and the normalization anchors: the
/// bottom-left boundary point, the first bottom slope, and the slope of the
/// slice-width function on the first interval.
struct SolveInput {
  Rational x_left;
  Rational x_right;
  Rational left_edge_length;   // 0 = corner point
  Rational right_edge_length;  // 0 = corner point
  std::vector<SolveStation> stations;  // strictly increasing x in (x_left, x_right)
  Point anchor;                // bottom boundary point at x_left
  Rational bottom_slope_first;
  Rational width_slope_first;
};

struct SolveResult {
  SemitoricPolygon sp;
  std::vector<Rational> top_slopes;     // per interval, left to right
  std::vector<Rational> bottom_slopes;  // per interval, left to right
};

/// Solves the slope system given by the Duistermaat-Heckman jumps and the
/// monodromy relation across each cut line, then integrates the closed
/// polygon. SolveFailed (with rank diagnostics) when the linear system is
/// underdetermined or inconsistent, or when the chains fail to close up.
SolveResult solve_representative(const SolveInput& in);

}  // namespace probekit
