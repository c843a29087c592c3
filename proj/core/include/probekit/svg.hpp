#pragma once

#include <string>

#include "probekit/json_io.hpp"

namespace probekit {

/// Deterministic SVG figure: polygon outline, nodes as filled circles, cuts as
/// dashed vertical segments, and verdict-colored points when a report is
/// given. Same input, byte-identical output. The y-axis points up and one
/// lattice unit is 100 px.
std::string render_svg(const PolygonSpec& spec, const ScanReport* report = nullptr);

}  // namespace probekit
