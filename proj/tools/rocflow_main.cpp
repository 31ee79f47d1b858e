#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "rocflow/io.hpp"

namespace fs = std::filesystem;
using namespace rocflow;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct Cli {
  std::string config_path;
  std::string flow_name;
  std::string flow_expr;
  std::optional<double> n, a, b, c;
  std::optional<int> grid;
  std::optional<double> tmax;
  std::string out_dir;
  std::optional<int> seed;
  bool inject_sign_error = false;
};

void apply_env_threads() {
#ifdef _OPENMP
  if (const char* env = std::getenv("ROCFLOW_THREADS")) {
    int t = std::atoi(env);
    if (t > 0) omp_set_num_threads(t);
  }
#endif
}

RunConfig assemble(const Cli& cli) {
  RunConfig cfg;
  if (!cli.config_path.empty()) cfg = load_config(cli.config_path);
  if (!cli.flow_name.empty()) cfg.flow.id = cli.flow_name;
  if (!cli.flow_expr.empty()) {
    cfg.flow.id = "expression";
    cfg.flow.expr = cli.flow_expr;
  }
  if (cli.n) cfg.flow.params.n = *cli.n;
  if (cli.a) cfg.flow.params.a = *cli.a;
  if (cli.b) cfg.flow.params.b = *cli.b;
  if (cli.c) cfg.flow.params.c = *cli.c;
  if (cli.grid) cfg.grid_n = *cli.grid;
  if (cli.tmax) cfg.t_max = *cli.tmax;
  if (!cli.out_dir.empty()) cfg.out_dir = cli.out_dir;
  if (cli.seed) cfg.seed = unsigned(*cli.seed);
  return cfg;
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.out_dir);
  return (fs::path(cfg.out_dir) / name).string();
}

int cmd_simulate(const RunConfig& cfg) {
  SimConfig sim;
  sim.flow = build_flow(cfg.flow);
  sim.grid_n = cfg.grid_n;
  sim.cfl = cfg.cfl;
  sim.t_max = cfg.t_max;
  sim.snapshot_count = cfg.outputs.snapshots;
  sim.validate();

  SupportField initial = build_initial(cfg.initial, cfg.grid_n);
  SimResult res;
  try {
    res = run_simulation(sim, initial);
  } catch (const Error& e) {
    std::cerr << "runtime abort: " << e.what() << "\n";
    write_verdicts_json(out_path(cfg, "verdicts.json"), SimVerdicts{},
                        StopReason::DomainExit, e.what());
    return kExitRuntime;
  }

  write_monitors_csv(out_path(cfg, "monitors.csv"), res.monitors);
  write_verdicts_json(out_path(cfg, "verdicts.json"), res.verdicts, res.reason);
  write_snapshot(out_path(cfg, "final.json"), res.final_state);
  for (size_t k = 0; k < res.snapshots.size(); ++k) {
    std::string stem = "snapshot_" + std::to_string(k);
    write_snapshot(out_path(cfg, stem + ".json"), res.snapshots[k]);
    if (cfg.outputs.mesh)
      write_obj(out_path(cfg, stem + ".obj"),
                reconstruct_surface(res.snapshots[k]));
  }
  if (cfg.outputs.mesh)
    write_obj(out_path(cfg, "final.obj"), reconstruct_surface(res.final_state));

  std::cout << "stopped: " << to_string(res.reason) << " at t = "
            << res.final_state.time << "\n"
            << "thm2 " << (res.verdicts.thm2.pass ? "pass" : "fail") << ", thm3 "
            << (res.verdicts.thm3.applicable
                    ? (res.verdicts.thm3.pass ? "pass" : "fail")
                    : "n/a")
            << ", thm4 " << (res.verdicts.thm4.pass ? "pass" : "fail") << "\n";
  return kExitOk;
}

int cmd_roc(const RunConfig& cfg) {
  SupportField field = cfg.snapshot.empty()
                           ? build_initial(cfg.initial, cfg.grid_n)
                           : read_snapshot(cfg.snapshot);
  RoCField roc = compute_roc(field, true);
  HyperbolicArea area = hyperbolic_roc_area(roc);
  write_roc_csv(out_path(cfg, "roc.csv"), roc);
  if (cfg.outputs.svg)
    write_roc_svg(out_path(cfg, "roc.svg"), roc, area, !roc.convex);
  std::cout << "hyperbolic RoC area " << area.value << " (excluded spherical "
            << "area " << area.excluded_area << ")\n";
  if (!roc.convex) {
    std::cerr << "warning: non-convex state, convexity margin "
              << roc.convexity_margin << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_flowlines(const RunConfig& cfg) {
  FlowSpec flow = build_flow(cfg.flow);
  FlowlineSet set = flowlines(flow, cfg.region, cfg.levels, cfg.samples);
  write_flowlines_csv(out_path(cfg, "flowlines.csv"), set);
  if (cfg.outputs.svg)
    write_flowlines_svg(out_path(cfg, "flowlines.svg"), set, cfg.region);
  std::cout << "levels:";
  for (double lv : set.levels) std::cout << ' ' << lv;
  std::cout << "\n";
  return kExitOk;
}

int cmd_ode(const RunConfig& cfg) {
  FlowSpec flow = build_flow(cfg.flow);
  OdePath path = integrate_ode(cfg.ode_start, flow, cfg.ode_tspan, cfg.ode_dt);
  write_ode_csv(out_path(cfg, "ode.csv"), path);
  std::cout << "steps " << path.t.size() - 1 << ", I drift " << path.i_drift
            << (path.cone_exit ? ", stopped at the cone boundary" : "") << "\n";
  return kExitOk;
}

int cmd_mesh(const RunConfig& cfg) {
  SupportField field = cfg.snapshot.empty()
                           ? build_initial(cfg.initial, cfg.grid_n)
                           : read_snapshot(cfg.snapshot);
  SurfaceMesh mesh = reconstruct_surface(field);
  write_obj(out_path(cfg, "surface.obj"), mesh);
  std::cout << mesh.vertices.size() << " vertices, " << mesh.quads.size()
            << " quads\n";
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, bool inject) {
  auto suites = run_verify_suites(cfg.seed, inject);
  write_verify_report(out_path(cfg, "verify.txt"), suites);
  bool all = true;
  for (const auto& s : suites) {
    std::cout << (s.pass ? "PASS " : "FAIL ") << s.name
              << " worst_rel_err=" << s.worst_err
              << (s.detail.empty() ? "" : " at ") << s.detail << "\n";
    all = all && s.pass;
  }
  return all ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  apply_env_threads();

  CLI::App app{"curvature flows of convex surfaces in radii-of-curvature "
               "coordinates"};
  app.require_subcommand(1);

  Cli cli;
  std::string command;
  for (const char* name :
       {"simulate", "roc", "flowlines", "ode", "verify", "mesh"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", cli.config_path, "configuration file (JSON)");
    sub->add_option("--flow", cli.flow_name, "catalog flow id");
    sub->add_option("--flow-expr", cli.flow_expr,
                    "flow as an expression in psi and s");
    sub->add_option("--n", cli.n, "power flow exponent");
    sub->add_option("-a", cli.a, "linear Weingarten a");
    sub->add_option("-b", cli.b, "linear Weingarten b");
    sub->add_option("-c", cli.c, "linear Weingarten c");
    sub->add_option("--grid", cli.grid, "grid nodes per chart side");
    sub->add_option("--tmax", cli.tmax, "evolution time");
    sub->add_option("--out", cli.out_dir, "output directory");
    sub->add_option("--seed", cli.seed, "random seed");
    if (std::string(name) == "verify")
      sub->add_flag("--inject-sign-error", cli.inject_sign_error,
                    "tamper a table cell (self-test of the verifier)");
    sub->callback([&command, name]() { command = name; });
  }

  CLI11_PARSE(app, argc, argv);

  RunConfig cfg;
  try {
    cfg = assemble(cli);
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (command == "simulate") return cmd_simulate(cfg);
    if (command == "roc") return cmd_roc(cfg);
    if (command == "flowlines") return cmd_flowlines(cfg);
    if (command == "ode") return cmd_ode(cfg);
    if (command == "mesh") return cmd_mesh(cfg);
    if (command == "verify") return cmd_verify(cfg, cli.inject_sign_error);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const BadParams& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SyntaxError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const UnknownIdentifier& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "runtime abort: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitConfig;
}
