#pragma once

#include <optional>
#include <string>
#include <vector>

#include "probekit/semitoric.hpp"

namespace probekit {

enum class FactKind {
  Symmetry,                  // fibers with first coordinate != line_x are displaceable
  ExistenceNondisplaceable,  // some nondisplaceable fiber exists (optionally on line_x)
  SuperheavyPoint,           // the listed fibers are nondisplaceable
  ExternalNondisplaceable,   // fibers on the payload segment are nondisplaceable
};

/// Externally supplied displaceability knowledge. Facts are inputs with a
/// citation; the engine never derives them.
struct Fact {
  FactKind kind = FactKind::SuperheavyPoint;
  std::vector<Point> points;
  std::optional<Rational> line_x;
  std::optional<Segment> segment;
  std::string citation;

  bool operator==(const Fact& o) const {
    return kind == o.kind && points == o.points && line_x == o.line_x &&
           segment == o.segment && citation == o.citation;
  }
};

const char* fact_kind_name(FactKind k);
FactKind fact_kind_from_name(const std::string& s);

enum class Status {
  DisplaceableByProbe,
  DisplaceableByRectangle,
  DisplaceableByFact,
  NondisplaceableSphere,
  NondisplaceableStem,
  NondisplaceableByFact,
  Unknown,
};

const char* status_name(Status s);
bool is_displaceable(Status s);

/// Probe witness: start on a facet, integrally transverse direction, recorded
/// exit and affine length (nullopt length = infinite probe).
struct Probe {
  Point start;
  LatticeVector dir;
  std::optional<Point> exit;
  std::optional<Rational> length;
};

/// Rectangle witness for displacing a focus-focus fiber: the corner
/// normalization and the admissible rectangle [0,R]x[0,h].
struct RectangleWitness {
  AffineMap normalization;
  Rational R;
  Rational h;
};

/// Surgery steps a verdict's witness lives behind (applied left to right).
struct OpNote {
  enum Kind { Mutate, Trade, Slide } kind = Mutate;
  size_t node = 0;
  Rational slide_to;  // Slide only
};

struct Verdict {
  Status status = Status::Unknown;
  std::optional<Probe> probe;
  std::optional<RectangleWitness> rectangle;
  std::optional<Fact> fact;
  std::vector<OpNote> ops;
};

/// Evaluates one explicit probe: start w, direction lambda, target u.
/// DisplaceableByProbe when the probe is valid and u sits strictly in its
/// first half; Unknown when the probe is valid but does not certify u.
/// InvalidProbe when w is not in a facet's relative interior, lambda is not
/// integrally transverse / not entering, u is not interior on the ray, or the
/// probe crosses a cut.
Verdict probe_verdict(const SemitoricPolygon& sp, const Point& w,
                      const LatticeVector& lambda, const Point& u);

/// Exhaustive probe search for u: every facet, every integrally transverse
/// direction with max-norm <= bound whose ray through the facet hits u.
Verdict probe_search(const SemitoricPolygon& sp, const Point& u, long long bound);

/// Rectangle criterion for the multiplicity-1 node i: normalizes the cut
/// corner, then sweeps exact breakpoint candidates for an R with 2h' < R such
/// that [0,R]x[0,h'] fits avoiding the other cuts. Unknown is a certificate
/// that no admissible R exists (for this corner normalization).
Verdict ff_displaceable(const SemitoricPolygon& sp, size_t i);

/// A representative reachable from the input by mutations and trades, with the
/// point-transport map and the excluded (traded-cut) segments, all in the
/// configuration's own frame.
struct Configuration {
  SemitoricPolygon sp;
  std::vector<Segment> excluded;
  std::vector<PiecewiseShear> shears;
  std::vector<OpNote> ops;
};

Configuration base_configuration(const SemitoricPolygon& sp);
/// Trades every tradable node until none is left.
Configuration toric_closure(Configuration cfg);
/// Flip node i first; nullopt when the mutation is unavailable.
std::optional<Configuration> mutated_configuration(const SemitoricPolygon& sp, size_t i);
Point transform_point(const Configuration& cfg, const Point& p);

struct ClassifyOptions {
  long long bound = 10;
  std::optional<Rational> slide_range;  // enables slide retries when set
};

/// Full fiber classification: sphere rule, rectangle criterion, probes through
/// mutations/trades/slides, then facts.
Verdict classify(const SemitoricPolygon& sp, const Point& u,
                 const std::vector<Fact>& facts = {}, const ClassifyOptions& opts = {});

/// Re-checks a DisplaceableByProbe witness against the (possibly transformed)
/// system it claims to certify.
bool revalidate_probe_witness(const SemitoricPolygon& sp, const Point& u, const Verdict& v);

}  // namespace probekit
