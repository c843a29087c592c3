#pragma once

#include <optional>

#include "probekit/displace.hpp"
#include "probekit/solve.hpp"

namespace probekit {

/// The octagon with vertices (1,0),(2,0),(3,1),(3,2),(2,3),(1,3),(0,2),(0,1).
RationalPolygon octagon_toric();

struct OctagonParams {
  Rational h{1};  // node height, in (0, 3/2]
  bool merged() const { return h == Rational(3, 2); }
};

/// Semitoric representative for the octagon system. For h < 3/2 the canonical
/// cut signs (-1,+1,-1,+1) give the octagon itself with nodes at heights h and
/// 3-h on the lines x = 1, 2; other sign vectors are reached by mutation.
/// At h = 3/2 the four nodes merge pairwise into two multiplicity-2 nodes.
SemitoricPolygon octagon_semitoric(const OctagonParams& params, const std::vector<int>& eps);

/// Combinatorics reproducing the octagon representative by the slope solver.
SolveInput octagon_solve_input(const Rational& h);

/// The five quasi-state superheavy fibers of the toric octagon, as an external
/// fact usable by the classifier.
Fact octagon_superheavy_fact();

/// Normalized height of the Kepler focus-focus value as a function of the
/// coupling parameter, defined for 1/5 < t < 1.
double kepler_height(const Rational& t);

/// The parameter where the normalized height crosses 1, to 1e-12.
double kepler_t0();

struct KeplerParams {
  Rational R{1};
  Rational t{1, 2};       // in (1/5, 1)
  double precision = 1e-9;  // rationalization error for the height
};

struct KeplerSystem {
  SemitoricPolygon rep_minus;  // cut below the node; built by the slope solver
  SemitoricPolygon rep_plus;   // cut above the node; mutation of rep_minus
  AffineMap to_square;  // sends rep_plus to [0,2R]^2 with the node on the diagonal
  Rational R;
  Rational h;
  double h_float = 0;      // height before rationalization (0 when exact h given)
  double precision = 0;
};

KeplerSystem kepler(const KeplerParams& params);
KeplerSystem kepler_from_h(const Rational& R, const Rational& h);
SolveInput kepler_solve_input(const Rational& R, const Rational& h);

struct CamParams {
  Rational R1{1};
  Rational R2{2};  // requires R1 < R2; equal radii are the Kepler problem
  Rational t{1, 2};
  std::optional<Rational> h1;  // height invariant; defaults to R1/2
};

struct CamSystem {
  SemitoricPolygon rep;
  Point distinguished;  // (R2-R1, R1-h1), the midpoint of the slice on the node line
  Fact symmetry;        // fibers off the node line are displaceable
  Rational h1;
};

CamSystem coupled_angular_momenta(const CamParams& params);

struct SpinParams {
  Rational rho1{1};
  Rational rho2{1};          // scale of the planar factor; the polygon shape
                             // depends on rho1 and the lower facet only
  Rational lower_slope{-1};  // must be negative; the upper facets are forced
};

/// Unbounded representative with the cut above the node: top facets
/// y = x + rho1 (left of the node line) and y = rho1 (right of it),
/// node at the origin, lower facet of the given slope through (-rho1, 0).
SemitoricPolygon spin_oscillator(const SpinParams& params);

}  // namespace probekit
