#include "probekit/json_io.hpp"

#include <json.hpp>

#include "probekit/error.hpp"

namespace probekit {

namespace {

using nlohmann::json;

void reject_floats(const json& j, const std::string& path) {
  if (j.is_number_float())
    throw Error(Errc::ParseError, "float value at " + path + "; rationals must be \"p/q\" strings");
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (path == "$" && it.key() == "metadata") continue;  // floats allowed there
      reject_floats(it.value(), path + "." + it.key());
    }
  } else if (j.is_array()) {
    for (size_t i = 0; i < j.size(); ++i) reject_floats(j[i], path + "[" + std::to_string(i) + "]");
  }
}

Rational rat(const json& j, const char* what) {
  if (!j.is_string()) throw Error(Errc::ParseError, std::string(what) + " must be a rational string");
  return Rational::parse(j.get<std::string>());
}

long long integer(const json& j, const char* what) {
  if (!j.is_number_integer()) throw Error(Errc::ParseError, std::string(what) + " must be an integer");
  return j.get<long long>();
}

Point point(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) throw Error(Errc::ParseError, std::string(what) + " must be [x, y]");
  return {rat(j[0], what), rat(j[1], what)};
}

json point_json(const Point& p) { return json::array({p.x.str(), p.y.str()}); }

json segment_json(const Segment& s) {
  return json::array({point_json(s.a), point_json(s.b)});
}

Segment segment(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) throw Error(Errc::ParseError, std::string(what) + " must be [a, b]");
  return {point(j[0], what), point(j[1], what)};
}

json fact_json(const Fact& f) {
  json out;
  out["kind"] = fact_kind_name(f.kind);
  out["citation"] = f.citation;
  if (f.line_x) out["line_x"] = f.line_x->str();
  if (f.segment) out["segment"] = segment_json(*f.segment);
  if (!f.points.empty()) {
    json pts = json::array();
    for (const Point& p : f.points) pts.push_back(point_json(p));
    out["points"] = pts;
  }
  return out;
}

Fact fact_from_json(const json& j) {
  Fact f;
  f.kind = fact_kind_from_name(j.at("kind").get<std::string>());
  if (j.contains("citation")) f.citation = j.at("citation").get<std::string>();
  if (j.contains("line_x")) f.line_x = rat(j.at("line_x"), "fact line_x");
  if (j.contains("segment")) f.segment = segment(j.at("segment"), "fact segment");
  if (j.contains("points")) {
    for (const json& p : j.at("points")) f.points.push_back(point(p, "fact point"));
  }
  return f;
}

json verdict_json(const Verdict& v) {
  json out;
  out["status"] = status_name(v.status);
  if (v.probe) {
    json w;
    w["type"] = "probe";
    w["start"] = point_json(v.probe->start);
    w["dir"] = json::array({v.probe->dir.x, v.probe->dir.y});
    w["exit"] = v.probe->exit ? point_json(*v.probe->exit) : json(nullptr);
    w["length"] = v.probe->length ? json(v.probe->length->str()) : json(nullptr);
    out["witness"] = w;
  } else if (v.rectangle) {
    json w;
    w["type"] = "rectangle";
    const auto& l = v.rectangle->normalization.linear_part();
    w["linear"] = json::array({l[0], l[1], l[2], l[3]});
    w["translation"] = point_json(v.rectangle->normalization.translation_part());
    w["R"] = v.rectangle->R.str();
    w["h"] = v.rectangle->h.str();
    out["witness"] = w;
  }
  if (!v.ops.empty()) {
    json ops = json::array();
    for (const OpNote& op : v.ops) {
      json o;
      o["op"] = op.kind == OpNote::Mutate ? "mutate" : op.kind == OpNote::Trade ? "trade" : "slide";
      o["node"] = op.node;
      if (op.kind == OpNote::Slide) o["to"] = op.slide_to.str();
      ops.push_back(o);
    }
    out["ops"] = ops;
  }
  if (v.fact) out["fact"] = v.fact->citation;
  return out;
}

json polygon_spec_json(const PolygonSpec& spec) {
  json out;
  out["version"] = 1;
  json poly;
  json hps = json::array();
  for (const HalfPlane& h : spec.sp.polygon.halfplanes()) {
    json e;
    e["normal"] = json::array({h.normal.x, h.normal.y});
    e["offset"] = h.offset.str();
    hps.push_back(e);
  }
  poly["halfplanes"] = hps;
  if (!spec.sp.polygon.bounded()) {
    const auto& rays = spec.sp.polygon.rays();
    poly["rays"] = json::array({json::array({rays[0].x, rays[0].y}),
                                json::array({rays[1].x, rays[1].y})});
  }
  out["polygon"] = poly;
  json nodes = json::array();
  for (const Node& n : spec.sp.nodes) {
    json e;
    e["position"] = point_json(n.position);
    e["epsilon"] = n.epsilon;
    e["k"] = n.multiplicity;
    nodes.push_back(e);
  }
  out["nodes"] = nodes;
  json facts = json::array();
  for (const Fact& f : spec.facts) facts.push_back(fact_json(f));
  out["facts"] = facts;
  out["compact"] = spec.compact;
  if (!spec.metadata_json.empty()) out["metadata"] = json::parse(spec.metadata_json);
  return out;
}

PolygonSpec polygon_spec_from_json(const json& j) {
  reject_floats(j, "$");
  if (integer(j.at("version"), "version") != 1)
    throw Error(Errc::ParseError, "unsupported spec version");
  const json& poly = j.at("polygon");
  std::vector<HalfPlane> hps;
  for (const json& e : poly.at("halfplanes")) {
    const json& n = e.at("normal");
    hps.push_back({{integer(n.at(0), "normal"), integer(n.at(1), "normal")},
                   rat(e.at("offset"), "offset")});
  }
  RationalPolygon rp = RationalPolygon::from_halfplanes(hps);
  if (poly.contains("rays")) {
    std::vector<LatticeVector> rays;
    for (const json& r : poly.at("rays"))
      rays.push_back({integer(r.at(0), "ray"), integer(r.at(1), "ray")});
    if (rp.bounded() || rp.rays() != rays)
      throw Error(Errc::ParseError, "declared rays do not match the half-planes");
  } else if (!rp.bounded()) {
    throw Error(Errc::ParseError, "unbounded polygon must declare its rays");
  }
  std::vector<Node> nodes;
  if (j.contains("nodes")) {
    for (const json& e : j.at("nodes")) {
      Node n;
      n.position = point(e.at("position"), "node position");
      n.epsilon = static_cast<int>(integer(e.at("epsilon"), "epsilon"));
      n.multiplicity = integer(e.at("k"), "k");
      nodes.push_back(n);
    }
  }
  PolygonSpec spec;
  spec.sp = make_semitoric(rp, std::move(nodes));
  if (j.contains("facts")) {
    for (const json& f : j.at("facts")) spec.facts.push_back(fact_from_json(f));
  }
  spec.compact = j.contains("compact") ? j.at("compact").get<bool>() : true;
  if (j.contains("metadata")) spec.metadata_json = j.at("metadata").dump();
  return spec;
}

}  // namespace

PolygonSpec parse_polygon_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
  try {
    return polygon_spec_from_json(j);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

std::string emit_polygon_spec(const PolygonSpec& spec) {
  return polygon_spec_json(spec).dump(2) + "\n";
}

std::string emit_scan_report(const PolygonSpec& spec, const ScanReport& report) {
  json out;
  out["spec"] = polygon_spec_json(spec);
  json pts = json::array();
  for (const ReportEntry& e : report.entries) {
    json r;
    r["point"] = point_json(e.point);
    r["is_node"] = e.is_node;
    json v = verdict_json(e.verdict);
    for (auto it = v.begin(); it != v.end(); ++it) r[it.key()] = it.value();
    pts.push_back(r);
  }
  out["points"] = pts;
  json summary;
  json counts;
  for (const auto& [name, n] : report.counts()) counts[name] = n;
  summary["counts"] = counts;
  summary["stem_inference_applied"] = report.stem_inference_applied;
  summary["resolution"] = report.resolution.str();
  summary["bound"] = report.bound;
  out["summary"] = summary;
  return out.dump(2) + "\n";
}

ReportFile parse_scan_report(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
  try {
    ReportFile rf;
    rf.spec = polygon_spec_from_json(j.at("spec"));
    rf.report.resolution = rat(j.at("summary").at("resolution"), "resolution");
    rf.report.bound = integer(j.at("summary").at("bound"), "bound");
    rf.report.stem_inference_applied = j.at("summary").at("stem_inference_applied").get<bool>();
    for (const json& e : j.at("points")) {
      ReportEntry entry;
      entry.point = point(e.at("point"), "report point");
      entry.is_node = e.contains("is_node") && e.at("is_node").get<bool>();
      const std::string st = e.at("status").get<std::string>();
      for (Status s : {Status::DisplaceableByProbe, Status::DisplaceableByRectangle,
                       Status::DisplaceableByFact, Status::NondisplaceableSphere,
                       Status::NondisplaceableStem, Status::NondisplaceableByFact,
                       Status::Unknown}) {
        if (st == status_name(s)) entry.verdict.status = s;
      }
      rf.report.entries.push_back(entry);
    }
    return rf;
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

bool looks_like_report(const std::string& text) {
  try {
    json j = json::parse(text);
    return j.is_object() && j.contains("points") && j.contains("spec");
  } catch (const json::exception&) {
    return false;
  }
}

}  // namespace probekit
