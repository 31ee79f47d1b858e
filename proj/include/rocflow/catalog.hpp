#ifndef ROCFLOW_CATALOG_HPP
#define ROCFLOW_CATALOG_HPP

#include <functional>
#include <memory>
#include <string>

#include "rocflow/jet.hpp"

namespace rocflow {

enum class CatalogId {
  MeanCurvPow,      // K = +-psi^n / (psi^2 - s^2)^n
  GaussCurvPow,     // K = +-1 / (psi^2 - s^2)^n
  MeanRadiusPow,    // K = +-1 / psi^n
  LinearWeingarten  // K = a + (2 b psi + c) / (psi^2 - s^2)
};

enum class FlowSign { Contracting, Expanding, Indefinite };

struct FlowParams {
  double n = 1.0;          // power flows
  double a = 0, b = 0, c = 0;  // linear Weingarten
};

// A named curvature function K(psi, |sigma|) with a second-order jet
// evaluator. Immutable after construction.
class FlowSpec {
 public:
  FlowSpec() = default;
  FlowSpec(std::string name, FlowSign sign,
           std::function<FlowJet(double, double)> eval, bool closed_form,
           FlowParams params = {})
      : name_(std::move(name)),
        sign_(sign),
        eval_(std::move(eval)),
        closed_form_(closed_form),
        params_(params) {}

  const std::string& name() const { return name_; }
  FlowSign sign() const { return sign_; }
  bool closed_form() const { return closed_form_; }
  const FlowParams& params() const { return params_; }
  bool bloore() const { return bloore_; }
  void set_bloore(bool b) { bloore_ = b; }

  // Full jet at a cone point; throws OutOfDomain outside psi > s >= 0.
  FlowJet jet(double psi, double s) const;

 private:
  std::string name_;
  FlowSign sign_ = FlowSign::Indefinite;
  std::function<FlowJet(double, double)> eval_;
  bool closed_form_ = false;
  FlowParams params_;
  bool bloore_ = false;
};

// Catalog flows with jets from closed forms. Throws BadParams for n = 0 or
// non-positive Weingarten coefficients.
FlowSpec make_flow(CatalogId id, const FlowParams& params);
FlowSpec make_flow(const std::string& id, const FlowParams& params);

FlowJet eval_jet(const FlowSpec& spec, double psi, double s);

// K with all jet entries negated.
FlowSpec negate_flow(const FlowSpec& spec);

// The tabulated closed form of det Hess K = K20 K02 - K11^2 for catalog
// flows; throws BadParams for flows without a closed determinant column.
double hessian_det_closed(CatalogId id, const FlowParams& params, double psi,
                          double s);

// -K10 - |K01|; positive iff the flow is parabolic at this point.
double parabolicity(const FlowJet& jet);

struct ConeRect {
  double psi_min = 1.0, psi_max = 3.0;
  double s_min = 0.0, s_max = 0.9;  // s is clipped to < psi pointwise
};

struct ConditionMargin {
  double worst = 0.0;      // minimum margin over samples (>= 0 means holds)
  double at_psi = 0.0, at_s = 0.0;
  bool ok() const { return worst >= -1e-12; }
};

struct ClassifyReport {
  bool parabolic = false;
  bool convex = false;
  bool concave = false;
  bool thm3_contracting_ok = false;  // K + s K01 >= 0 and K01 + s K02 >= 0
  bool thm3_expanding_ok = false;    // both <= 0
  bool thm4_ok = false;              // -K10 > eps and -K10 >= s |K20|
  double eps = 0.0;                  // inf(-K10) over the sampled region
  bool sign_ok = true;               // contracting => K >= 0, expanding => K <= 0
  ConditionMargin parabolic_margin;
  ConditionMargin convex_k20, convex_det;
  ConditionMargin thm3a, thm3b;      // contracting-branch margins
  ConditionMargin thm4_margin;
  std::string notes;
};

// Samples the inequalities of Theorems 3, 4 and 6 over a rectangle in the
// open cone. `samples` is the per-axis sample count.
ClassifyReport classify_flow(const FlowSpec& spec, const ConeRect& region,
                             int samples);

}  // namespace rocflow

#endif
