#ifndef ROCFLOW_PDE_HPP
#define ROCFLOW_PDE_HPP

#include <string>
#include <vector>

#include "rocflow/catalog.hpp"
#include "rocflow/geometry.hpp"

namespace rocflow {

struct SimConfig {
  FlowSpec flow;
  int grid_n = 65;            // nodes per chart side, odd, >= 33
  double cfl = 0.2;           // in (0, 0.5]
  double t_max = 0.1;
  double min_convexity = 1e-7;  // stop when psi - |sigma| drops below
  double min_psi = 1e-2;        // stop when the surface has shrunk this far
  double record_interval = 0.0; // 0: record every step
  int snapshot_count = 0;       // extra states kept along the way

  void validate() const;
};

struct MonitorSample {
  double t = 0.0;
  double min_abs_K = 0.0;
  double max_psi = 0.0, min_psi = 0.0;
  double max_sigma = 0.0;
  double min_convexity = 0.0;      // min psi - |sigma|
  double parab_margin_min = 0.0;   // min/max of -K10 - |K01| over owned nodes
  double parab_margin_max = 0.0;
  double epsilon = 0.0;            // running inf of -K10 up to this time
};

struct MonitorSeries {
  std::vector<MonitorSample> samples;  // t strictly increasing
};

enum class StopReason { TMaxReached, Converged, ConvexityLost, DomainExit };
const char* to_string(StopReason r);

struct Verdict {
  bool applicable = true;  // hypotheses established for this run
  bool pass = true;
  double margin = 0.0;     // worst tolerance slack (negative = violated)
  std::string note;
};

struct SimVerdicts {
  Verdict thm2;  // min |K| nondecreasing
  Verdict thm3;  // max psi nonincreasing (contracting) / min psi nondecreasing
  Verdict thm4;  // max |sigma| e^{eps t} nonincreasing
};

struct SimResult {
  SupportField final_state;
  MonitorSeries monitors;
  SimVerdicts verdicts;
  StopReason reason = StopReason::TMaxReached;
  std::vector<SupportField> snapshots;
};

// -K(psi, |sigma|) node-wise on both charts; requires a convex state.
RealFieldPair pde_rhs(const SupportField& field, const FlowSpec& flow);

// Largest stable explicit step: c h^2 / max of the diffusion coefficient
// (1/2)(1+|xi|^2)^2 (-K10 + |K01|). Throws NotParabolic when the
// coefficient is non-positive somewhere.
double adaptive_dt(const SupportField& field, const FlowSpec& flow,
                   double cfl_factor);

// One classical RK4 step of dr/dt = -K with per-stage chart re-blending.
SupportField advance(const SupportField& field, const FlowSpec& flow,
                     double dt);

// Steps to t_max or a stop margin, recording monitors and evaluating the
// maximum-principle verdicts.
SimResult run_simulation(const SimConfig& config, const SupportField& initial);

// Right-hand sides of the (psi, |sigma|) evolution system. Nodes with
// |sigma| <= sigma_min use the zeroth-order part only and carry mask 0.
struct RocFlowRates {
  RealFieldPair dpsi, dsigma;
  ChartGrid<double> mask_north, mask_south;
  const ChartGrid<double>& mask(Chart c) const {
    return c == Chart::North ? mask_north : mask_south;
  }
};
RocFlowRates rocflow_rhs(const RoCField& roc, const FlowSpec& flow);

// Least-squares dilation constant for lambda r = K and the residual field.
struct SolitonReport {
  double lambda = 0.0;
  double max_residual = 0.0;
  double mean_residual = 0.0;
};
SolitonReport soliton_residual(const SupportField& field, const FlowSpec& flow);

}  // namespace rocflow

#endif
