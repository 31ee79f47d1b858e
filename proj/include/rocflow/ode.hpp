#ifndef ROCFLOW_ODE_HPP
#define ROCFLOW_ODE_HPP

#include <array>
#include <vector>

#include "rocflow/catalog.hpp"

namespace rocflow {

// A point of the radii-of-curvature half plane, psi > s >= 0.
struct RoCPoint {
  double psi = 1.0;
  double s = 0.0;
};

// (-K - s K01, s K10): the spatial-derivative-free reduction of the flow.
std::array<double, 2> ode_rhs(const RoCPoint& p, const FlowSpec& flow);

// The conserved quantity I = s K(psi, s).
double conserved_I(const RoCPoint& p, const FlowSpec& flow);

struct OdePath {
  std::vector<double> t;
  std::vector<RoCPoint> points;
  double i_drift = 0.0;   // max |I(t) - I(0)| along the path
  bool cone_exit = false; // stopped at the cone boundary before t_span
};

// Classical RK4 integration; stops just before leaving psi > s >= 0 and
// reports the last valid state at the end of the path.
OdePath integrate_ode(const RoCPoint& p0, const FlowSpec& flow, double t_span,
                      double dt);

// {H, K} = H10 K01 - H01 K10 in the canonical coordinates.
double poisson_bracket(const FlowJet& h, const FlowJet& k);

struct Polyline {
  std::vector<std::array<double, 2>> points;  // (psi, s), ordered along the flow
  double level = 0.0;                         // I value traced
  bool degenerate = false;                    // the s = 0 boundary component
};

struct FlowlineSet {
  std::vector<double> levels;
  std::vector<Polyline> lines;
};

// Level sets of I = s K over the region rectangle clipped to the cone,
// traced by marching squares on a samples x samples lattice. Point order
// follows the ODE direction; the degenerate I = 0 boundary is always
// included.
FlowlineSet flowlines(const FlowSpec& flow, const ConeRect& region, int levels,
                      int samples = 64);

// Explicit level selection (each polyline tagged with its level).
FlowlineSet flowlines_at(const FlowSpec& flow, const ConeRect& region,
                         const std::vector<double>& levels, int samples = 64);

struct CertificateSample {
  double psi = 0.0, s = 0.0;
  double A = 0.0, B = 0.0;
  double HK = 0.0;  // {H, K}
  double HI = 0.0;  // {H, I}
  bool h10_zero = false;
};

struct CertificateReport {
  ConeRect region;
  std::vector<CertificateSample> samples;
  // Condition set a: A - |B| >= 0 and {H, I} >= 0; set b: both reversed.
  double worst_a_ab = 0.0, worst_a_hi = 0.0;
  double worst_b_ab = 0.0, worst_b_hi = 0.0;
  double worst_a_psi = 0.0, worst_a_s = 0.0;
  double worst_b_psi = 0.0, worst_b_s = 0.0;
  int h10_zero_count = 0;
  bool set_a_holds() const { return worst_a_ab >= 0.0 && worst_a_hi >= 0.0; }
  bool set_b_holds() const { return worst_b_ab >= 0.0 && worst_b_hi >= 0.0; }
};

// Evaluates the maximum-principle certificate quantities
//   Hess_K(dH) = K20 H01^2 - 2 K11 H01 H10 + K02 H10^2,
//   A = (H10^2 + H01^2) {H,K} - s (K10 Hess_H(dH) - H10 Hess_K(dH)),
//   B = -2 H10 H01 {H,K} + s (K01 Hess_H(dH) - H01 Hess_K(dH)),
//   {H,I} = H10 K + s {H,K}
// on a samples x samples lattice over the region (clipped to the cone).
CertificateReport certificate_check(const FlowSpec& hspec,
                                    const FlowSpec& kspec,
                                    const ConeRect& region, int samples);

// The certificate quantities at a single point, for direct checks.
CertificateSample certificate_at(const FlowSpec& hspec, const FlowSpec& kspec,
                                 double psi, double s);

}  // namespace rocflow

#endif
