#include "probekit/svg.hpp"

#include <algorithm>
#include <cstdio>

namespace probekit {

namespace {

constexpr double kScale = 100.0;  // px per lattice unit
constexpr double kMargin = 50.0;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  // Avoid "-0.00".
  if (std::string(buf) == "-0.00") return "0.00";
  return buf;
}

const char* status_color(Status s) {
  switch (s) {
    case Status::DisplaceableByProbe: return "#1a9850";
    case Status::DisplaceableByRectangle: return "#66bd63";
    case Status::DisplaceableByFact: return "#a6d96a";
    case Status::NondisplaceableSphere: return "#d73027";
    case Status::NondisplaceableStem: return "#7b3294";
    case Status::NondisplaceableByFact: return "#f46d43";
    case Status::Unknown: return "#999999";
  }
  return "#999999";
}

struct Frame {
  double xmin, xmax, ymin, ymax;
  double px(double x) const { return kMargin + (x - xmin) * kScale; }
  double py(double y) const { return kMargin + (ymax - y) * kScale; }  // y up
};

}  // namespace

std::string render_svg(const PolygonSpec& spec, const ScanReport* report) {
  const RationalPolygon& poly = spec.sp.polygon;

  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool first = true;
  auto grow = [&](double x, double y) {
    if (first) {
      xmin = xmax = x;
      ymin = ymax = y;
      first = false;
      return;
    }
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  };
  for (const Point& v : poly.vertices()) grow(v.x.to_double(), v.y.to_double());
  // Clip length for the unbounded edges.
  const double ray_len = 2.0;
  std::vector<std::pair<double, double>> outline;
  if (poly.bounded()) {
    for (const Point& v : poly.vertices()) outline.push_back({v.x.to_double(), v.y.to_double()});
  } else {
    const auto& rays = poly.rays();
    const Point& v0 = poly.vertices().front();
    const Point& v1 = poly.vertices().back();
    auto norm = [](double x, double y) { return std::max(std::abs(x), std::abs(y)); };
    double n0 = norm(rays[0].x, rays[0].y), n1 = norm(rays[1].x, rays[1].y);
    outline.push_back({v0.x.to_double() + rays[0].x * ray_len / n0,
                       v0.y.to_double() + rays[0].y * ray_len / n0});
    for (const Point& v : poly.vertices()) outline.push_back({v.x.to_double(), v.y.to_double()});
    outline.push_back({v1.x.to_double() + rays[1].x * ray_len / n1,
                       v1.y.to_double() + rays[1].y * ray_len / n1});
    for (const auto& [x, y] : outline) grow(x, y);
  }

  Frame fr{xmin, xmax, ymin, ymax};
  double width = (xmax - xmin) * kScale + 2 * kMargin;
  double height = (ymax - ymin) * kScale + 2 * kMargin;

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) + "\" height=\"" +
         fmt(height) + "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) + "\">\n";

  out += "  <path d=\"";
  for (size_t i = 0; i < outline.size(); ++i) {
    out += (i == 0 ? "M " : "L ");
    out += fmt(fr.px(outline[i].first)) + " " + fmt(fr.py(outline[i].second)) + " ";
  }
  if (poly.bounded()) out += "Z";
  out += "\" fill=\"#eef3f7\" stroke=\"#20303c\" stroke-width=\"2\"/>\n";

  for (size_t i = 0; i < spec.sp.nodes.size(); ++i) {
    Segment cut = cut_segment(spec.sp, i);
    out += "  <line x1=\"" + fmt(fr.px(cut.a.x.to_double())) + "\" y1=\"" +
           fmt(fr.py(cut.a.y.to_double())) + "\" x2=\"" + fmt(fr.px(cut.b.x.to_double())) +
           "\" y2=\"" + fmt(fr.py(cut.b.y.to_double())) +
           "\" stroke=\"#c0392b\" stroke-width=\"2\" stroke-dasharray=\"6 4\"/>\n";
  }

  if (report) {
    for (const ReportEntry& e : report->entries) {
      if (e.is_node) continue;  // nodes drawn below
      out += "  <circle cx=\"" + fmt(fr.px(e.point.x.to_double())) + "\" cy=\"" +
             fmt(fr.py(e.point.y.to_double())) + "\" r=\"5\" fill=\"" +
             status_color(e.verdict.status) + "\"/>\n";
    }
  }

  for (const Node& n : spec.sp.nodes) {
    out += "  <circle cx=\"" + fmt(fr.px(n.position.x.to_double())) + "\" cy=\"" +
           fmt(fr.py(n.position.y.to_double())) +
           "\" r=\"7\" fill=\"#c0392b\" stroke=\"#7b241c\" stroke-width=\"2\"/>\n";
  }

  out += "</svg>\n";
  return out;
}

}  // namespace probekit
