#pragma once

#include <string>

#include "probekit/scan.hpp"

namespace probekit {

/// On-disk description of a system: polygon (half-planes, rays), nodes, facts,
/// compactness flag and free-form metadata. Rationals are "p/q" strings; a
/// float anywhere outside `metadata` is a parse error.
struct PolygonSpec {
  SemitoricPolygon sp;
  std::vector<Fact> facts;
  bool compact = true;
  std::string metadata_json;  // "" or a serialized JSON object
};

PolygonSpec parse_polygon_spec(const std::string& text);
std::string emit_polygon_spec(const PolygonSpec& spec);

/// Scan report file: embeds the spec so a report is self-contained.
struct ReportFile {
  PolygonSpec spec;
  ScanReport report;
};

std::string emit_scan_report(const PolygonSpec& spec, const ScanReport& report);
ReportFile parse_scan_report(const std::string& text);

bool looks_like_report(const std::string& text);

}  // namespace probekit
