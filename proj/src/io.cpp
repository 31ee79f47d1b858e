#include "rocflow/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rocflow/parser.hpp"

namespace rocflow {

using json = nlohmann::json;

FlowSpec build_flow(const FlowConfig& cfg) {
  if (cfg.id == "expression") {
    if (cfg.expr.empty()) throw ConfigError("expression flow needs 'expr'");
    return make_expression_flow(cfg.expr);
  }
  return make_flow(cfg.id, cfg.params);
}

namespace {

double harmonic(int l, int m, const Vec3& u) {
  double x = u[0], y = u[1], z = u[2];
  if (l == 2) {
    switch (m) {
      case 0: return 0.5 * (3.0 * z * z - 1.0);
      case 1: return x * z;
      case 2: return x * x - y * y;
    }
  } else if (l == 3) {
    switch (m) {
      case 0: return 0.5 * z * (5.0 * z * z - 3.0);
      case 1: return x * (5.0 * z * z - 1.0);
      case 2: return z * (x * x - y * y);
      case 3: return x * (x * x - 3.0 * y * y);
    }
  }
  throw ConfigError("harmonic perturbation supports l in {2, 3}, m in [0, l]");
}

}  // namespace

SupportField build_initial(const InitialConfig& cfg, int grid_n) {
  if (cfg.kind == "sphere") {
    if (!(cfg.radius > 0.0)) throw ConfigError("sphere radius must be > 0");
    double r = cfg.radius;
    return make_support_field([r](const Vec3&) { return r; }, grid_n);
  }
  if (cfg.kind == "perturbed_sphere") {
    if (!(cfg.radius > 0.0)) throw ConfigError("sphere radius must be > 0");
    if (std::abs(cfg.amplitude) >= 0.5)
      throw ConfigError("perturbation amplitude must stay below 0.5");
    double r = cfg.radius, a = cfg.amplitude;
    int l = cfg.l, m = cfg.m;
    harmonic(l, m, Vec3{0, 0, 1});  // validate indices up front
    return make_support_field(
        [r, a, l, m](const Vec3& u) { return r * (1.0 + a * harmonic(l, m, u)); },
        grid_n);
  }
  if (cfg.kind == "revolution") {
    if (cfg.coeffs.empty())
      throw ConfigError("revolution surface needs polynomial coefficients");
    std::vector<double> c = cfg.coeffs;
    return make_support_field(
        [c](const Vec3& u) {
          double acc = 0.0;
          for (size_t k = c.size(); k-- > 0;) acc = acc * u[2] + c[k];
          return acc;
        },
        grid_n);
  }
  if (cfg.kind == "file") {
    if (cfg.path.empty()) throw ConfigError("initial kind 'file' needs 'path'");
    return read_snapshot(cfg.path);
  }
  throw ConfigError("unknown initial surface kind '" + cfg.kind + "'");
}

namespace {

void reject_unknown(const json& obj, const char* where,
                    std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) { ok = true; break; }
    if (!ok)
      throw ConfigError(std::string("unknown key '") + it.key() + "' in " +
                        where);
  }
}

double num(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number())
    throw ConfigError(std::string("'") + key + "' must be a number");
  return obj[key].get<double>();
}

int integer(const json& obj, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer())
    throw ConfigError(std::string("'") + key + "' must be an integer");
  return obj[key].get<int>();
}

std::string str(const json& obj, const char* key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_string())
    throw ConfigError(std::string("'") + key + "' must be a string");
  return obj[key].get<std::string>();
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(root, "config",
                 {"schema_version", "flow", "initial", "grid_n", "cfl", "t_max",
                  "region", "levels", "samples", "ode", "out_dir", "snapshot",
                  "seed", "outputs"});

  RunConfig cfg;
  cfg.schema_version = integer(root, "schema_version", kSchemaVersion);
  if (cfg.schema_version != kSchemaVersion)
    throw ConfigError("unsupported schema_version " +
                      std::to_string(cfg.schema_version));

  if (root.contains("flow")) {
    const json& f = root["flow"];
    if (!f.is_object()) throw ConfigError("'flow' must be an object");
    reject_unknown(f, "flow", {"id", "n", "a", "b", "c", "expr"});
    cfg.flow.id = str(f, "id", cfg.flow.id);
    cfg.flow.params.n = num(f, "n", 1.0);
    cfg.flow.params.a = num(f, "a", 0.0);
    cfg.flow.params.b = num(f, "b", 0.0);
    cfg.flow.params.c = num(f, "c", 0.0);
    cfg.flow.expr = str(f, "expr", "");
  }
  if (root.contains("initial")) {
    const json& s = root["initial"];
    if (!s.is_object()) throw ConfigError("'initial' must be an object");
    reject_unknown(s, "initial",
                   {"kind", "radius", "l", "m", "amplitude", "coeffs", "path"});
    cfg.initial.kind = str(s, "kind", cfg.initial.kind);
    cfg.initial.radius = num(s, "radius", cfg.initial.radius);
    cfg.initial.l = integer(s, "l", cfg.initial.l);
    cfg.initial.m = integer(s, "m", cfg.initial.m);
    cfg.initial.amplitude = num(s, "amplitude", cfg.initial.amplitude);
    cfg.initial.path = str(s, "path", "");
    if (s.contains("coeffs")) {
      if (!s["coeffs"].is_array())
        throw ConfigError("'coeffs' must be an array of numbers");
      for (const auto& v : s["coeffs"]) {
        if (!v.is_number()) throw ConfigError("'coeffs' entries must be numbers");
        cfg.initial.coeffs.push_back(v.get<double>());
      }
    }
  }
  cfg.grid_n = integer(root, "grid_n", cfg.grid_n);
  cfg.cfl = num(root, "cfl", cfg.cfl);
  cfg.t_max = num(root, "t_max", cfg.t_max);
  if (root.contains("region")) {
    const json& r = root["region"];
    if (!r.is_object()) throw ConfigError("'region' must be an object");
    reject_unknown(r, "region", {"psi_min", "psi_max", "s_min", "s_max"});
    cfg.region.psi_min = num(r, "psi_min", cfg.region.psi_min);
    cfg.region.psi_max = num(r, "psi_max", cfg.region.psi_max);
    cfg.region.s_min = num(r, "s_min", cfg.region.s_min);
    cfg.region.s_max = num(r, "s_max", cfg.region.s_max);
  }
  cfg.levels = integer(root, "levels", cfg.levels);
  cfg.samples = integer(root, "samples", cfg.samples);
  if (root.contains("ode")) {
    const json& o = root["ode"];
    if (!o.is_object()) throw ConfigError("'ode' must be an object");
    reject_unknown(o, "ode", {"psi", "s", "dt", "t_span"});
    cfg.ode_start.psi = num(o, "psi", cfg.ode_start.psi);
    cfg.ode_start.s = num(o, "s", cfg.ode_start.s);
    cfg.ode_dt = num(o, "dt", cfg.ode_dt);
    cfg.ode_tspan = num(o, "t_span", cfg.ode_tspan);
  }
  cfg.out_dir = str(root, "out_dir", cfg.out_dir);
  cfg.snapshot = str(root, "snapshot", "");
  cfg.seed = unsigned(integer(root, "seed", 0));
  if (root.contains("outputs")) {
    const json& o = root["outputs"];
    if (!o.is_object()) throw ConfigError("'outputs' must be an object");
    reject_unknown(o, "outputs", {"mesh", "svg", "snapshots"});
    if (o.contains("mesh")) {
      if (!o["mesh"].is_boolean()) throw ConfigError("'mesh' must be a boolean");
      cfg.outputs.mesh = o["mesh"].get<bool>();
    }
    if (o.contains("svg")) {
      if (!o["svg"].is_boolean()) throw ConfigError("'svg' must be a boolean");
      cfg.outputs.svg = o["svg"].get<bool>();
    }
    cfg.outputs.snapshots = integer(o, "snapshots", 0);
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
  if (!out) throw Error("cannot write '" + path + "'");
  return out;
}

}  // namespace

void write_monitors_csv(const std::string& path, const MonitorSeries& mon) {
  auto out = open_out(path);
  out << "t,min_abs_K,max_psi,min_psi,max_sigma,min_convexity,"
         "parab_margin_min,epsilon\n";
  for (const auto& s : mon.samples)
    out << fmt(s.t) << ',' << fmt(s.min_abs_K) << ',' << fmt(s.max_psi) << ','
        << fmt(s.min_psi) << ',' << fmt(s.max_sigma) << ','
        << fmt(s.min_convexity) << ',' << fmt(s.parab_margin_min) << ','
        << fmt(s.epsilon) << '\n';
}

namespace {

json verdict_json(const Verdict& v) {
  return json{{"applicable", v.applicable},
              {"pass", v.pass},
              {"margin", v.margin},
              {"note", v.note}};
}

}  // namespace

void write_verdicts_json(const std::string& path, const SimVerdicts& verdicts,
                         StopReason reason, const std::string& abort_error) {
  json root{{"schema_version", kSchemaVersion},
            {"reason", to_string(reason)},
            {"thm2", verdict_json(verdicts.thm2)},
            {"thm3", verdict_json(verdicts.thm3)},
            {"thm4", verdict_json(verdicts.thm4)}};
  if (!abort_error.empty()) root["abort_error"] = abort_error;
  auto out = open_out(path);
  out << root.dump(2) << '\n';
}

void write_obj(const std::string& path, const SurfaceMesh& mesh) {
  auto out = open_out(path);
  out << "# rocflow surface mesh\n";
  for (const auto& v : mesh.vertices)
    out << "v " << fmt(v[0]) << ' ' << fmt(v[1]) << ' ' << fmt(v[2]) << '\n';
  for (const auto& n : mesh.normals)
    out << "vn " << fmt(n[0]) << ' ' << fmt(n[1]) << ' ' << fmt(n[2]) << '\n';
  for (const auto& q : mesh.quads)
    out << "f " << q[0] + 1 << "//" << q[0] + 1 << ' ' << q[1] + 1 << "//"
        << q[1] + 1 << ' ' << q[2] + 1 << "//" << q[2] + 1 << ' ' << q[3] + 1
        << "//" << q[3] + 1 << '\n';
}

void write_snapshot(const std::string& path, const SupportField& field) {
  json root{{"schema_version", kSchemaVersion},
            {"time", field.time},
            {"n", field.n()},
            {"chart_radius", field.radius()},
            {"north", field.north.values},
            {"south", field.south.values}};
  auto out = open_out(path);
  out << root.dump() << '\n';
}

SupportField read_snapshot(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open snapshot '" + path + "'");
  json root;
  try {
    in >> root;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid snapshot JSON: ") + e.what());
  }
  if (!root.is_object() || !root.contains("n") || !root.contains("north") ||
      !root.contains("south"))
    throw ConfigError("snapshot missing required fields");
  if (integer(root, "schema_version", kSchemaVersion) != kSchemaVersion)
    throw ConfigError("unsupported snapshot schema_version");
  int n = root["n"].get<int>();
  double radius = num(root, "chart_radius", kChartRadius);
  double time = num(root, "time", 0.0);
  ChartGrid<double> north(Chart::North, n, radius);
  ChartGrid<double> south(Chart::South, n, radius);
  auto load = [&](const char* key, ChartGrid<double>& g) {
    const auto& arr = root[key];
    if (!arr.is_array() || arr.size() != g.values.size())
      throw ConfigError(std::string("snapshot '") + key + "' has wrong size");
    for (size_t k = 0; k < g.values.size(); ++k)
      g.values[k] = arr[k].get<double>();
  };
  load("north", north);
  load("south", south);
  return make_support_field(std::move(north), std::move(south), time);
}

void write_roc_csv(const std::string& path, const RoCField& roc) {
  auto out = open_out(path);
  out << "chart,psi,sigma\n";
  for (Chart c : {Chart::North, Chart::South}) {
    const auto& psi = roc.psi(c);
    const auto& sigma = roc.sigma(c);
    const char* name = c == Chart::North ? "north" : "south";
    for (int j = 0; j < psi.n; ++j)
      for (int i = 0; i < psi.n; ++i) {
        if (std::abs(psi.xi(i, j)) > 1.0 + 1e-12) continue;
        out << name << ',' << fmt(psi.at(i, j)) << ','
            << fmt(std::abs(sigma.at(i, j))) << '\n';
      }
  }
}

namespace {

constexpr double kSvgSize = 640.0;
constexpr double kSvgMargin = 60.0;

struct SvgMap {
  double x0, x1, y0, y1;
  double px(double x) const {
    return kSvgMargin + (x - x0) / (x1 - x0) * (kSvgSize - 2.0 * kSvgMargin);
  }
  double py(double y) const {
    return kSvgSize - kSvgMargin -
           (y - y0) / (y1 - y0) * (kSvgSize - 2.0 * kSvgMargin);
  }
};

std::string f2(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << v;
  return os.str();
}

void svg_header(std::ostream& out) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<!-- rocflow svg schema " << kSchemaVersion << " -->\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << int(kSvgSize) << "\" height=\"" << int(kSvgSize) << "\" viewBox=\"0 0 "
      << int(kSvgSize) << ' ' << int(kSvgSize) << "\">\n";
}

void svg_axes(std::ostream& out, const SvgMap& m, const char* xlabel,
              const char* ylabel) {
  out << "<rect x=\"" << f2(kSvgMargin) << "\" y=\"" << f2(kSvgMargin)
      << "\" width=\"" << f2(kSvgSize - 2 * kSvgMargin) << "\" height=\""
      << f2(kSvgSize - 2 * kSvgMargin)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << f2(kSvgSize / 2) << "\" y=\"" << f2(kSvgSize - 15)
      << "\" text-anchor=\"middle\" font-size=\"14\">" << xlabel << " ["
      << f2(m.x0) << ", " << f2(m.x1) << "]</text>\n";
  out << "<text x=\"15\" y=\"" << f2(kSvgSize / 2)
      << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 15 "
      << f2(kSvgSize / 2) << ")\">" << ylabel << " [" << f2(m.y0) << ", "
      << f2(m.y1) << "]</text>\n";
}

}  // namespace

void write_roc_svg(const std::string& path, const RoCField& roc,
                   const HyperbolicArea& area, bool warn_nonconvex) {
  FieldStats ps = owned_stats(roc.psi_north, roc.psi_south);
  double smax = 0.0;
  for (Chart c : {Chart::North, Chart::South}) {
    const auto& psi = roc.psi(c);
    const auto& sigma = roc.sigma(c);
    for (int j = 0; j < psi.n; ++j)
      for (int i = 0; i < psi.n; ++i)
        if (std::abs(psi.xi(i, j)) <= 1.0 + 1e-12)
          smax = std::max(smax, std::abs(sigma.at(i, j)));
  }
  double pad = 0.05 * std::max(ps.max - ps.min, 1e-6);
  SvgMap m{0.0, ps.max + pad, 0.0, std::max({smax * 1.1, pad, ps.max + pad})};
  m.y1 = m.x1;  // square aspect so the diagonal is at 45 degrees

  auto out = open_out(path);
  svg_header(out);
  svg_axes(out, m, "psi", "|sigma|");
  out << "<line x1=\"" << f2(m.px(0)) << "\" y1=\"" << f2(m.py(0))
      << "\" x2=\"" << f2(m.px(m.x1)) << "\" y2=\"" << f2(m.py(m.y1))
      << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  for (Chart c : {Chart::North, Chart::South}) {
    const auto& psi = roc.psi(c);
    const auto& sigma = roc.sigma(c);
    const char* color = c == Chart::North ? "#1f6fb2" : "#b23c1f";
    for (int j = 0; j < psi.n; ++j)
      for (int i = 0; i < psi.n; ++i) {
        if (std::abs(psi.xi(i, j)) > 1.0 + 1e-12) continue;
        out << "<circle cx=\"" << f2(m.px(psi.at(i, j))) << "\" cy=\""
            << f2(m.py(std::abs(sigma.at(i, j))))
            << "\" r=\"1.2\" fill=\"" << color << "\"/>\n";
      }
  }
  out << "<text x=\"" << f2(kSvgMargin) << "\" y=\"" << f2(kSvgSize - 34)
      << "\" font-size=\"12\">hyperbolic RoC area " << fmt(area.value)
      << " (excluded " << fmt(area.excluded_area) << ")</text>\n";
  if (warn_nonconvex)
    out << "<text x=\"" << f2(kSvgMargin) << "\" y=\"" << f2(kSvgMargin - 10)
        << "\" font-size=\"12\" fill=\"red\">warning: non-convex state</text>\n";
  out << "</svg>\n";
}

void write_flowlines_csv(const std::string& path, const FlowlineSet& set) {
  auto out = open_out(path);
  out << "line,level,degenerate,psi,s\n";
  for (size_t li = 0; li < set.lines.size(); ++li)
    for (const auto& p : set.lines[li].points)
      out << li << ',' << fmt(set.lines[li].level) << ','
          << (set.lines[li].degenerate ? 1 : 0) << ',' << fmt(p[0]) << ','
          << fmt(p[1]) << '\n';
}

void write_flowlines_svg(const std::string& path, const FlowlineSet& set,
                         const ConeRect& region) {
  SvgMap m{region.psi_min, region.psi_max, region.s_min, region.s_max};
  auto out = open_out(path);
  svg_header(out);
  out << "<defs><marker id=\"arrow\" viewBox=\"0 0 8 8\" refX=\"6\" refY=\"4\""
         " markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\">"
         "<path d=\"M 0 0 L 8 4 L 0 8 z\" fill=\"#1f6fb2\"/></marker></defs>\n";
  svg_axes(out, m, "psi", "|sigma|");
  // the cone boundary psi = |sigma| where it crosses the region
  {
    double a = std::max(region.psi_min, region.s_min);
    double b = std::min(region.psi_max, region.s_max);
    if (b > a)
      out << "<line x1=\"" << f2(m.px(a)) << "\" y1=\"" << f2(m.py(a))
          << "\" x2=\"" << f2(m.px(b)) << "\" y2=\"" << f2(m.py(b))
          << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  }
  for (const auto& line : set.lines) {
    if (line.points.size() < 2) continue;
    out << "<polyline fill=\"none\" stroke=\""
        << (line.degenerate ? "#888888" : "#1f6fb2") << "\""
        << (line.degenerate ? " stroke-dasharray=\"6 4\"" : "")
        << " marker-mid=\"url(#arrow)\" points=\"";
    // thin the markers: emit every point but rely on marker-mid sparsity
    for (const auto& p : line.points)
      out << f2(m.px(p[0])) << ',' << f2(m.py(p[1])) << ' ';
    out << "\"/>\n";
  }
  out << "<text x=\"" << f2(kSvgMargin) << "\" y=\"" << f2(kSvgSize - 34)
      << "\" font-size=\"12\">levels:";
  for (double lv : set.levels) out << ' ' << fmt(lv);
  out << "</text>\n</svg>\n";
}

void write_ode_csv(const std::string& path, const OdePath& path_data) {
  auto out = open_out(path);
  out << "t,psi,s\n";
  for (size_t k = 0; k < path_data.t.size(); ++k)
    out << fmt(path_data.t[k]) << ',' << fmt(path_data.points[k].psi) << ','
        << fmt(path_data.points[k].s) << '\n';
}

namespace {

std::string fmt_param(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    std::ostringstream os;
    os << (long long)v;
    return os.str();
  }
  return fmt(v);
}

}  // namespace

std::string catalog_expression(CatalogId id, const FlowParams& p) {
  switch (id) {
    case CatalogId::MeanCurvPow: {
      std::string n = fmt_param(p.n);
      std::string body =
          "psi^(" + n + ") / (psi^2 - s^2)^(" + n + ")";
      return p.n > 0 ? body : "-(" + body + ")";
    }
    case CatalogId::GaussCurvPow: {
      std::string n = fmt_param(p.n);
      std::string body = "1 / (psi^2 - s^2)^(" + n + ")";
      return p.n > 0 ? body : "-(" + body + ")";
    }
    case CatalogId::MeanRadiusPow: {
      std::string n = fmt_param(p.n);
      std::string body = "1 / psi^(" + n + ")";
      return p.n > 0 ? body : "-(" + body + ")";
    }
    case CatalogId::LinearWeingarten:
      return fmt_param(p.a) + " + (2 * " + fmt_param(p.b) + " * psi + " +
             fmt_param(p.c) + ") / (psi^2 - s^2)";
  }
  throw BadParams("unknown catalog id");
}

namespace {

struct CasePoint {
  double psi, s;
};

std::vector<CasePoint> random_cone_points(std::mt19937& rng, int count,
                                          double s_floor = 0.0) {
  std::uniform_real_distribution<double> upsi(1.2, 3.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<CasePoint> pts;
  pts.reserve(count);
  while (int(pts.size()) < count) {
    double psi = upsi(rng);
    double s = s_floor + (0.8 * psi - s_floor) * u01(rng);
    if (psi - s < 0.2) continue;
    pts.push_back({psi, s});
  }
  return pts;
}

// Error relative to the larger of the two values and a caller-supplied
// magnitude floor, so cells whose true value is zero are judged against the
// size of their jet rather than against rounding noise.
double rel_err(double got, double want, double floor_scale = 1e-12) {
  double scale = std::max({std::abs(want), std::abs(got), floor_scale, 1e-12});
  return std::abs(got - want) / scale;
}

double jet_scale(const FlowJet& j) {
  return std::max({std::abs(j.K), std::abs(j.K10), std::abs(j.K01),
                   std::abs(j.K20), std::abs(j.K11), std::abs(j.K02), 1e-12});
}

struct TableCase {
  std::string name;
  CatalogId id;
  FlowParams params;
  FlowSpec spec;
};

std::vector<TableCase> table_cases() {
  std::vector<TableCase> cases;
  auto add = [&](CatalogId id, FlowParams p) {
    FlowSpec spec = make_flow(id, p);
    cases.push_back({spec.name(), id, p, spec});
  };
  add(CatalogId::MeanCurvPow, {1.0, 0, 0, 0});
  add(CatalogId::MeanCurvPow, {2.0, 0, 0, 0});
  add(CatalogId::MeanCurvPow, {-1.0, 0, 0, 0});
  add(CatalogId::GaussCurvPow, {1.0, 0, 0, 0});
  add(CatalogId::GaussCurvPow, {2.0, 0, 0, 0});
  add(CatalogId::GaussCurvPow, {-1.0, 0, 0, 0});
  add(CatalogId::MeanRadiusPow, {1.0, 0, 0, 0});
  add(CatalogId::MeanRadiusPow, {-1.0, 0, 0, 0});
  add(CatalogId::LinearWeingarten, {1.0, 1.0, 2.0, 1.0});
  add(CatalogId::LinearWeingarten, {1.0, 2.0, 3.0, 2.0});
  return cases;
}

// Central differences of the value row pin the derivative rows.
SuiteResult table_fd_suite(std::mt19937& rng, const std::vector<TableCase>& cases,
                           const FlowSpec* injected, const char* injected_name) {
  SuiteResult res{"derivative-tables-fd", true, 0.0, ""};
  const double h = 1e-4;
  const double tol1 = 1e-6, tol2 = 1e-5;
  auto check = [&](const std::string& flow, const char* cell, double got,
                   double want, double tol, double floor_scale) {
    double e = rel_err(got, want, floor_scale);
    if (e > res.worst_err) {
      res.worst_err = e;
      res.detail = flow + " " + cell;
    }
    if (e > tol) res.pass = false;
  };
  auto run_flow = [&](const std::string& name, const FlowSpec& spec) {
    auto pts = random_cone_points(rng, 100, 2.0 * h);
    for (const auto& p : pts) {
      auto K = [&](double psi, double s) { return spec.jet(psi, s).K; };
      FlowJet j = spec.jet(p.psi, p.s);
      double k10 = (K(p.psi + h, p.s) - K(p.psi - h, p.s)) / (2 * h);
      double k01 = (K(p.psi, p.s + h) - K(p.psi, p.s - h)) / (2 * h);
      double k20 =
          (K(p.psi + h, p.s) - 2 * j.K + K(p.psi - h, p.s)) / (h * h);
      double k02 =
          (K(p.psi, p.s + h) - 2 * j.K + K(p.psi, p.s - h)) / (h * h);
      double k11 = (K(p.psi + h, p.s + h) - K(p.psi + h, p.s - h) -
                    K(p.psi - h, p.s + h) + K(p.psi - h, p.s - h)) /
                   (4 * h * h);
      double fs = 0.1 * jet_scale(j);
      check(name, "K10", j.K10, k10, tol1, fs);
      check(name, "K01", j.K01, k01, tol1, fs);
      check(name, "K20", j.K20, k20, tol2, fs);
      check(name, "K02", j.K02, k02, tol2, fs);
      check(name, "K11", j.K11, k11, tol2, fs);
    }
  };
  for (const auto& c : cases) run_flow(c.name, c.spec);
  if (injected) run_flow(injected_name, *injected);
  return res;
}

SuiteResult hessian_suite(std::mt19937& rng,
                          const std::vector<TableCase>& cases) {
  SuiteResult res{"hessian-determinant-columns", true, 0.0, ""};
  for (const auto& c : cases) {
    auto pts = random_cone_points(rng, 100);
    for (const auto& p : pts) {
      FlowJet j = c.spec.jet(p.psi, p.s);
      double det = j.K20 * j.K02 - j.K11 * j.K11;
      double want = hessian_det_closed(c.id, c.params, p.psi, p.s);
      // cancellation floor: the determinant is a difference of these products
      double fs = 1e-4 * (std::abs(j.K20 * j.K02) + j.K11 * j.K11);
      double e = rel_err(det, want, fs);
      if (e > res.worst_err) {
        res.worst_err = e;
        res.detail = c.name + " detHess";
      }
      if (e > 1e-10) res.pass = false;
    }
  }
  return res;
}

// d K/d lambda_1 * d K/d lambda_2 = (1/4)(psi^2-s^2)^2 (K10^2 - K01^2),
// with lambda_i the principal curvatures, checked by forward AD through the
// curvature parameterization.
SuiteResult note1_suite(std::mt19937& rng, const std::vector<TableCase>& cases) {
  SuiteResult res{"umbilic-slope-identity", true, 0.0, ""};
  for (const auto& c : cases) {
    auto pts = random_cone_points(rng, 100, 0.05);
    for (const auto& p : pts) {
      double l1 = 1.0 / (p.psi + p.s), l2 = 1.0 / (p.psi - p.s);
      Jet2<double> a = Jet2<double>::var_p(l1);
      Jet2<double> b = Jet2<double>::var_q(l2);
      Jet2<double> half = Jet2<double>::constant(0.5);
      Jet2<double> psij = half * (inv(a) + inv(b));
      Jet2<double> sj = half * (inv(b) - inv(a));
      FlowJet j = c.spec.jet(p.psi, p.s);
      Jet2<double> K = apply_jet(j, psij, sj);
      double got = K.p * K.q;
      double D = p.psi * p.psi - p.s * p.s;
      double want = 0.25 * D * D * (j.K10 * j.K10 - j.K01 * j.K01);
      double e = rel_err(got, want);
      if (e > res.worst_err) {
        res.worst_err = e;
        res.detail = c.name;
      }
      if (e > 1e-8) res.pass = false;
    }
  }
  return res;
}

SuiteResult ad_vs_catalog_suite(std::mt19937& rng,
                                const std::vector<TableCase>& cases) {
  SuiteResult res{"expression-ad-vs-closed-forms", true, 0.0, ""};
  for (const auto& c : cases) {
    ExprAst ast = parse_flow_expression(catalog_expression(c.id, c.params));
    auto pts = random_cone_points(rng, 100);
    for (const auto& p : pts) {
      FlowJet want = c.spec.jet(p.psi, p.s);
      FlowJet got = jet_eval(ast, p.psi, p.s);
      const double* w = &want.K;
      const double* g = &got.K;
      static const char* cells[6] = {"K", "K10", "K01", "K20", "K11", "K02"};
      double fs = 0.01 * jet_scale(want);
      for (int m = 0; m < 6; ++m) {
        double e = rel_err(g[m], w[m], fs);
        if (e > res.worst_err) {
          res.worst_err = e;
          res.detail = c.name + " " + cells[m];
        }
        if (e > 1e-10) res.pass = false;
      }
    }
  }
  return res;
}

SuiteResult certificate_suite(std::mt19937& rng,
                              const std::vector<TableCase>& cases) {
  SuiteResult res{"certificate-special-cases", true, 0.0, ""};
  FlowSpec hpsi = make_expression_flow("psi");
  FlowSpec hs = make_expression_flow("s");
  auto check = [&](const std::string& which, double got, double want) {
    double e = std::abs(got - want) /
               std::max(1.0, std::max(std::abs(got), std::abs(want)));
    if (e > res.worst_err) {
      res.worst_err = e;
      res.detail = which;
    }
    if (e > 1e-12) res.pass = false;
  };
  for (const auto& c : cases) {
    FlowSpec hneg = negate_flow(c.spec);
    auto pts = random_cone_points(rng, 50, 0.05);
    for (const auto& p : pts) {
      FlowJet k = c.spec.jet(p.psi, p.s);
      CertificateSample neg = certificate_at(hneg, c.spec, p.psi, p.s);
      check(c.name + " H=-K A", neg.A, 0.0);
      check(c.name + " H=-K B", neg.B, 0.0);
      check(c.name + " H=-K {H,I}", neg.HI, -k.K * k.K10);
      CertificateSample cp = certificate_at(hpsi, c.spec, p.psi, p.s);
      check(c.name + " H=psi A", cp.A, k.K01 + p.s * k.K02);
      check(c.name + " H=psi B", cp.B, 0.0);
      check(c.name + " H=psi {H,I}", cp.HI, k.K + p.s * k.K01);
      CertificateSample cs = certificate_at(hs, c.spec, p.psi, p.s);
      check(c.name + " H=s A", cs.A, -k.K10);
      check(c.name + " H=s B", cs.B, -p.s * k.K20);
      check(c.name + " H=s {H,I}", cs.HI, -p.s * k.K10);
    }
  }
  return res;
}

}  // namespace

std::vector<SuiteResult> run_verify_suites(unsigned seed,
                                           bool inject_sign_error) {
  std::mt19937 rng(seed);
  auto cases = table_cases();
  std::vector<SuiteResult> out;

  FlowSpec tampered;
  const FlowSpec* injected = nullptr;
  if (inject_sign_error) {
    // fixture: the mean-curvature table with the K11 cell's sign flipped
    FlowSpec base = make_flow(CatalogId::MeanCurvPow, {1.0, 0, 0, 0});
    tampered = FlowSpec(
        "mean_curv_pow(n=1,tampered)", base.sign(),
        [base](double psi, double s) {
          FlowJet j = base.jet(psi, s);
          j.K11 = -j.K11;
          return j;
        },
        true, base.params());
    injected = &tampered;
  }

  out.push_back(
      table_fd_suite(rng, cases, injected, "mean_curv_pow(n=1,tampered)"));
  out.push_back(hessian_suite(rng, cases));
  out.push_back(note1_suite(rng, cases));
  out.push_back(ad_vs_catalog_suite(rng, cases));
  out.push_back(certificate_suite(rng, cases));
  return out;
}

void write_verify_report(const std::string& path,
                         const std::vector<SuiteResult>& suites) {
  auto out = open_out(path);
  for (const auto& s : suites)
    out << (s.pass ? "PASS" : "FAIL") << ' ' << s.name << " worst_rel_err="
        << fmt(s.worst_err) << (s.detail.empty() ? "" : " at ") << s.detail
        << '\n';
}

}  // namespace rocflow
