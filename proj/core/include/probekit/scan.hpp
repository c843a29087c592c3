#pragma once

#include <map>
#include <optional>
#include <string>

#include "probekit/displace.hpp"

namespace probekit {

struct ScanOptions {
  Rational resolution{1, 4};
  long long bound = 10;
  bool compact = true;  // the underlying manifold is closed
  std::optional<std::pair<Rational, Rational>> window;  // x-range, required when unbounded
  std::optional<Rational> slide_range;
};

struct ReportEntry {
  Point point;
  Verdict verdict;
  bool is_node = false;
};

struct ScanReport {
  std::vector<ReportEntry> entries;
  Rational resolution;
  long long bound = 10;
  bool stem_inference_applied = false;

  std::vector<Point> uncertified() const;
  std::map<std::string, int> counts() const;
};

/// Classifies every grid point (and every node) of the polygon, then attempts
/// stem inference: when the system is compact, the polygon bounded, exactly one
/// point remains uncertified and the continuum between grid points is covered
/// by exact probe-family and fact certificates, the survivor is a stem.
ScanReport scan(const SemitoricPolygon& sp, const std::vector<Fact>& facts = {},
                const ScanOptions& opts = {});

}  // namespace probekit
