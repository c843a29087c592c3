// Command-line front end: polygon specs in, verdicts, reports and figures out.
//
// Exit codes: 0 success / displaceable; 1 valid probe that does not certify;
// 2 invalid probe; 64 malformed input; 65 missing window; 73 unwritable
// output; 70 internal error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "probekit/error.hpp"
#include "probekit/json_io.hpp"
#include "probekit/svg.hpp"
#include "probekit/systems.hpp"

using namespace probekit;

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitNoWindow = 65;
constexpr int kExitSoftware = 70;
constexpr int kExitCantCreate = 73;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write " + path);
  out << content;
  if (!out) throw Error(Errc::IoError, "cannot write " + path);
}

void write_output(const std::optional<std::string>& path, const std::string& content) {
  if (path) {
    write_file(*path, content);
  } else {
    std::cout << content;
  }
}

Point parse_point_arg(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos)
    throw Error(Errc::ParseError, "expected x,y in '" + s + "'");
  return {Rational::parse(s.substr(0, comma)), Rational::parse(s.substr(comma + 1))};
}

LatticeVector parse_dir_arg(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos)
    throw Error(Errc::ParseError, "expected a,b in '" + s + "'");
  return {std::stoll(s.substr(0, comma)), std::stoll(s.substr(comma + 1))};
}

long long default_bound() {
  if (const char* env = std::getenv("PROBEKIT_BOUND")) {
    try {
      long long b = std::stoll(env);
      if (b >= 1) return b;
    } catch (...) {
    }
  }
  return 10;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::ParseError:
    case Errc::IoError:
      return kExitUsage;
    case Errc::NeedsWindow:
      return kExitNoWindow;
    default:
      return kExitSoftware;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact displaceability toolkit for toric and semitoric momentum polygons"};
  app.require_subcommand(1);

  std::string spec_path, out_path, dir_arg, from_arg, target_arg, window_arg;
  std::optional<std::string> out_opt;
  std::string res_arg = "1/4";
  long long bound = default_bound();
  size_t node_index = 0;
  std::string slide_to, slide_range_arg;

  auto* probe_cmd = app.add_subcommand("probe", "evaluate one explicit probe");
  probe_cmd->add_option("spec", spec_path)->required();
  probe_cmd->add_option("--from", from_arg, "probe start x,y")->required();
  probe_cmd->add_option("--dir", dir_arg, "probe direction a,b")->required();
  probe_cmd->add_option("--target", target_arg, "target fiber x,y")->required();

  auto* scan_cmd = app.add_subcommand("scan", "classify every grid point");
  scan_cmd->add_option("spec", spec_path)->required();
  scan_cmd->add_option("--res", res_arg, "grid resolution (rational)");
  scan_cmd->add_option("--bound", bound, "probe direction bound");
  scan_cmd->add_option("--window", window_arg, "x-window a,b (required when unbounded)");
  scan_cmd->add_option("--slide-range", slide_range_arg, "allowed nodal slide range");
  scan_cmd->add_option("--out", out_path, "write the report JSON here");

  auto* render_cmd = app.add_subcommand("render", "emit a deterministic SVG figure");
  render_cmd->add_option("input", spec_path, "spec or report JSON")->required();
  render_cmd->add_option("--out", out_path, "output SVG path")->required();

  auto* mutate_cmd = app.add_subcommand("mutate", "flip one node's cut");
  mutate_cmd->add_option("spec", spec_path)->required();
  mutate_cmd->add_option("--node", node_index)->required();
  mutate_cmd->add_option("--out", out_path);

  auto* slide_cmd = app.add_subcommand("slide", "move a node along its eigenline");
  slide_cmd->add_option("spec", spec_path)->required();
  slide_cmd->add_option("--node", node_index)->required();
  slide_cmd->add_option("--to", slide_to, "target y (rational)")->required();
  slide_cmd->add_option("--out", out_path);

  auto* trade_cmd = app.add_subcommand("trade", "exchange a node for an honest corner");
  trade_cmd->add_option("spec", spec_path)->required();
  trade_cmd->add_option("--node", node_index)->required();
  trade_cmd->add_option("--out", out_path);

  auto* dh_cmd = app.add_subcommand("dh-check", "Duistermaat-Heckman jump report");
  dh_cmd->add_option("spec", spec_path)->required();

  auto* solve_cmd = app.add_subcommand("solve", "solve a representative from combinatorics");
  solve_cmd->add_option("input", spec_path, "combinatorics JSON")->required();
  solve_cmd->add_option("--out", out_path);

  auto* gen_cmd = app.add_subcommand("gen", "emit a generator system as a spec");
  std::string system_name;
  std::string h_arg, eps_arg = "-1,1,-1,1", r_arg = "1", t_arg = "1/2";
  std::string r1_arg = "1", r2_arg = "2", h1_arg, rho1_arg = "1", rho2_arg = "1",
              lower_arg = "-1";
  double precision = 1e-9;
  gen_cmd->add_option("system", system_name, "octagon | kepler | cam | spin")->required();
  gen_cmd->add_option("--height", h_arg, "octagon node height / exact Kepler height");
  gen_cmd->add_option("--eps", eps_arg, "cut signs, comma separated");
  gen_cmd->add_option("--R", r_arg, "Kepler radius");
  gen_cmd->add_option("--t", t_arg, "coupling parameter");
  gen_cmd->add_option("--precision", precision, "height rationalization error");
  gen_cmd->add_option("--R1", r1_arg);
  gen_cmd->add_option("--R2", r2_arg);
  gen_cmd->add_option("--h1", h1_arg, "height invariant override");
  gen_cmd->add_option("--rho1", rho1_arg);
  gen_cmd->add_option("--rho2", rho2_arg);
  gen_cmd->add_option("--lower-slope", lower_arg, "spin lower facet slope");
  gen_cmd->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);
  if (!out_path.empty()) out_opt = out_path;

  try {
    if (probe_cmd->parsed()) {
      PolygonSpec spec = parse_polygon_spec(read_file(spec_path));
      Verdict v;
      try {
        v = probe_verdict(spec.sp, parse_point_arg(from_arg), parse_dir_arg(dir_arg),
                          parse_point_arg(target_arg));
      } catch (const Error& e) {
        if (e.code() == Errc::InvalidProbe) {
          std::cout << "{\"status\": \"invalid-probe\", \"reason\": \"" << e.what() << "\"}\n";
          return 2;
        }
        throw;
      }
      std::cout << "{\"status\": \"" << status_name(v.status) << "\"";
      if (v.probe && v.probe->length)
        std::cout << ", \"length\": \"" << v.probe->length->str() << "\"";
      if (v.probe && !v.probe->length) std::cout << ", \"length\": \"inf\"";
      std::cout << "}\n";
      return v.status == Status::DisplaceableByProbe ? 0 : 1;
    }

    if (scan_cmd->parsed()) {
      PolygonSpec spec = parse_polygon_spec(read_file(spec_path));
      ScanOptions opts;
      opts.resolution = Rational::parse(res_arg);
      opts.bound = bound;
      opts.compact = spec.compact;
      if (!window_arg.empty()) {
        Point w = parse_point_arg(window_arg);
        opts.window = {w.x, w.y};
      }
      if (!slide_range_arg.empty()) opts.slide_range = Rational::parse(slide_range_arg);
      ScanReport report = scan(spec.sp, spec.facts, opts);
      if (out_opt) write_file(*out_opt, emit_scan_report(spec, report));
      for (const auto& [name, n] : report.counts())
        std::cout << name << ": " << n << "\n";
      std::cout << "stem_inference_applied: "
                << (report.stem_inference_applied ? "true" : "false") << "\n";
      auto un = report.uncertified();
      std::cout << "uncertified: " << un.size() << "\n";
      for (const Point& p : un)
        std::cout << "  (" << p.x.str() << ", " << p.y.str() << ")\n";
      return 0;
    }

    if (render_cmd->parsed()) {
      std::string text = read_file(spec_path);
      std::string svg;
      if (looks_like_report(text)) {
        ReportFile rf = parse_scan_report(text);
        svg = render_svg(rf.spec, &rf.report);
      } else {
        PolygonSpec spec = parse_polygon_spec(text);
        svg = render_svg(spec);
      }
      try {
        write_file(out_path, svg);
      } catch (const Error&) {
        std::cerr << "cannot write " << out_path << "\n";
        return kExitCantCreate;
      }
      return 0;
    }

    if (mutate_cmd->parsed()) {
      PolygonSpec spec = parse_polygon_spec(read_file(spec_path));
      spec.sp = mutate(spec.sp, node_index);
      write_output(out_opt, emit_polygon_spec(spec));
      return 0;
    }

    if (slide_cmd->parsed()) {
      PolygonSpec spec = parse_polygon_spec(read_file(spec_path));
      SlideResult r = slide(spec.sp, node_index, Rational::parse(slide_to));
      spec.sp = r.sp;
      write_output(out_opt, emit_polygon_spec(spec));
      std::cerr << "slid segment: (" << r.slid.a.x.str() << "," << r.slid.a.y.str() << ") - ("
                << r.slid.b.x.str() << "," << r.slid.b.y.str() << ")\n";
      return 0;
    }

    if (trade_cmd->parsed()) {
      PolygonSpec spec = parse_polygon_spec(read_file(spec_path));
      TradeResult r = trade(spec.sp, node_index);
      spec.sp = r.sp;
      write_output(out_opt, emit_polygon_spec(spec));
      std::cerr << "excluded segment: (" << r.excluded.a.x.str() << "," << r.excluded.a.y.str()
                << ") - (" << r.excluded.b.x.str() << "," << r.excluded.b.y.str() << ")\n";
      return 0;
    }

    if (dh_cmd->parsed()) {
      PolygonSpec spec = parse_polygon_spec(read_file(spec_path));
      DhReport report = dh_jump_report(spec.sp);
      for (const DhRow& row : report.rows) {
        std::cout << "x = " << row.x.str() << ": ";
        if (row.skipped) {
          std::cout << "skipped (vertical edge)\n";
          continue;
        }
        std::cout << "slopes " << row.left_slope.str() << " -> " << row.right_slope.str()
                  << ", jump " << row.jump.str() << ", predicted " << row.predicted.str()
                  << (row.match ? " [match]" : " [MISMATCH]") << "\n";
      }
      return report.all_match() ? 0 : 1;
    }

    if (solve_cmd->parsed()) {
      // Combinatorics JSON: mirrors SolveInput.
      std::string text = read_file(spec_path);
      auto j = nlohmann::json::parse(text);
      SolveInput in;
      auto rat = [](const nlohmann::json& v) { return Rational::parse(v.get<std::string>()); };
      in.x_left = rat(j.at("x_left"));
      in.x_right = rat(j.at("x_right"));
      in.left_edge_length = rat(j.at("left_edge_length"));
      in.right_edge_length = rat(j.at("right_edge_length"));
      in.anchor = {rat(j.at("anchor").at(0)), rat(j.at("anchor").at(1))};
      in.bottom_slope_first = rat(j.at("bottom_slope_first"));
      in.width_slope_first = rat(j.at("width_slope_first"));
      for (const auto& st : j.at("stations")) {
        SolveStation s;
        s.x = rat(st.at("x"));
        if (st.contains("nodes")) {
          for (const auto& n : st.at("nodes")) {
            s.nodes.push_back({n.at("epsilon").get<int>(), n.at("k").get<long long>(),
                               rat(n.at("height"))});
          }
        }
        if (st.contains("top_vertex"))
          s.top_vertex = SolveWeights{st.at("top_vertex").at(0).get<long long>(),
                                      st.at("top_vertex").at(1).get<long long>()};
        if (st.contains("bottom_vertex"))
          s.bottom_vertex = SolveWeights{st.at("bottom_vertex").at(0).get<long long>(),
                                         st.at("bottom_vertex").at(1).get<long long>()};
        in.stations.push_back(std::move(s));
      }
      SolveResult r = solve_representative(in);
      PolygonSpec spec;
      spec.sp = r.sp;
      write_output(out_opt, emit_polygon_spec(spec));
      return 0;
    }

    if (gen_cmd->parsed()) {
      PolygonSpec spec;
      if (system_name == "octagon") {
        if (h_arg.empty()) {
          spec.sp = SemitoricPolygon{octagon_toric(), {}};
        } else {
          OctagonParams p;
          p.h = Rational::parse(h_arg);
          std::vector<int> eps;
          std::stringstream ss(eps_arg);
          std::string item;
          while (std::getline(ss, item, ',')) eps.push_back(std::stoi(item));
          spec.sp = octagon_semitoric(p, eps);
        }
      } else if (system_name == "kepler") {
        KeplerSystem sys;
        if (!h_arg.empty()) {
          sys = kepler_from_h(Rational::parse(r_arg), Rational::parse(h_arg));
        } else {
          KeplerParams p;
          p.R = Rational::parse(r_arg);
          p.t = Rational::parse(t_arg);
          p.precision = precision;
          sys = kepler(p);
        }
        spec.sp = sys.rep_minus;
        if (sys.h_float != 0) {
          spec.metadata_json = "{\"height_float\": " + std::to_string(sys.h_float) +
                               ", \"precision\": " + std::to_string(sys.precision) +
                               ", \"height\": \"" + sys.h.str() + "\"}";
        }
      } else if (system_name == "cam") {
        CamParams p;
        p.R1 = Rational::parse(r1_arg);
        p.R2 = Rational::parse(r2_arg);
        p.t = Rational::parse(t_arg);
        if (!h1_arg.empty()) p.h1 = Rational::parse(h1_arg);
        CamSystem sys = coupled_angular_momenta(p);
        spec.sp = sys.rep;
        spec.facts.push_back(sys.symmetry);
      } else if (system_name == "spin") {
        SpinParams p;
        p.rho1 = Rational::parse(rho1_arg);
        p.rho2 = Rational::parse(rho2_arg);
        p.lower_slope = Rational::parse(lower_arg);
        spec.sp = spin_oscillator(p);
        spec.compact = false;
      } else {
        std::cerr << "unknown system '" << system_name << "'\n";
        return kExitUsage;
      }
      write_output(out_opt, emit_polygon_spec(spec));
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitSoftware;
  }
  return kExitSoftware;
}
