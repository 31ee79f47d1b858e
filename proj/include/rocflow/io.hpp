#ifndef ROCFLOW_IO_HPP
#define ROCFLOW_IO_HPP

#include <string>
#include <vector>

#include "rocflow/geometry.hpp"
#include "rocflow/ode.hpp"
#include "rocflow/pde.hpp"

namespace rocflow {

inline constexpr int kSchemaVersion = 1;

struct FlowConfig {
  std::string id = "mean_curv_pow";  // catalog id, or "expression"
  FlowParams params;
  std::string expr;  // used when id == "expression"
};

// Builds the FlowSpec a config names (catalog or parsed expression).
FlowSpec build_flow(const FlowConfig& cfg);

struct InitialConfig {
  std::string kind = "sphere";  // sphere | perturbed_sphere | revolution | file
  double radius = 1.0;
  int l = 2, m = 2;             // harmonic perturbation indices, l in {2, 3}
  double amplitude = 0.05;
  std::vector<double> coeffs;   // revolution: polynomial in the axis component
  std::string path;             // file: a snapshot to load
};

SupportField build_initial(const InitialConfig& cfg, int grid_n);

struct OutputConfig {
  bool mesh = false;
  bool svg = true;
  int snapshots = 0;
};

struct RunConfig {
  int schema_version = kSchemaVersion;
  FlowConfig flow;
  InitialConfig initial;
  int grid_n = 65;
  double cfl = 0.2;
  double t_max = 0.1;
  ConeRect region{1.0, 3.0, 0.0, 0.9};
  int levels = 9;
  int samples = 64;
  RoCPoint ode_start{2.0, 1.0};
  double ode_dt = 1e-4;
  double ode_tspan = 1.0;
  std::string out_dir = "out";
  std::string snapshot;  // input snapshot for the roc command
  unsigned seed = 0;
  OutputConfig outputs;
};

// Strict parse: schema-versioned, unknown keys rejected. Throws ConfigError.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

// CSV with the frozen header
//   t,min_abs_K,max_psi,min_psi,max_sigma,min_convexity,parab_margin_min,epsilon
void write_monitors_csv(const std::string& path, const MonitorSeries& mon);

void write_verdicts_json(const std::string& path, const SimVerdicts& verdicts,
                         StopReason reason, const std::string& abort_error = "");

void write_obj(const std::string& path, const SurfaceMesh& mesh);

void write_snapshot(const std::string& path, const SupportField& field);
SupportField read_snapshot(const std::string& path);

void write_roc_csv(const std::string& path, const RoCField& roc);
void write_roc_svg(const std::string& path, const RoCField& roc,
                   const HyperbolicArea& area, bool warn_nonconvex);

void write_flowlines_csv(const std::string& path, const FlowlineSet& set);
void write_flowlines_svg(const std::string& path, const FlowlineSet& set,
                         const ConeRect& region);

void write_ode_csv(const std::string& path, const OdePath& path_data);

// Verification suites (derivative tables vs finite differences, Hessian
// determinant columns, the umbilic slope identity, expression AD vs closed
// forms, certificate special cases).
struct SuiteResult {
  std::string name;
  bool pass = false;
  double worst_err = 0.0;
  std::string detail;
};

std::vector<SuiteResult> run_verify_suites(unsigned seed,
                                           bool inject_sign_error = false);
void write_verify_report(const std::string& path,
                         const std::vector<SuiteResult>& suites);

// Canonical expression strings for the catalog flows (parser round-trip and
// AD cross-checks).
std::string catalog_expression(CatalogId id, const FlowParams& params);

}  // namespace rocflow

#endif
