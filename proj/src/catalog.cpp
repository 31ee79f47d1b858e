#include "rocflow/catalog.hpp"

#include <cmath>

#include "rocflow/errors.hpp"

namespace rocflow {

FlowJet FlowSpec::jet(double psi, double s) const {
  if (!(psi > s) || !(s >= 0.0))
    throw OutOfDomain("point (" + std::to_string(psi) + ", " +
                      std::to_string(s) + ") outside the cone psi > s >= 0");
  return eval_(psi, s);
}

FlowJet eval_jet(const FlowSpec& spec, double psi, double s) {
  return spec.jet(psi, s);
}

double parabolicity(const FlowJet& jet) { return -jet.K10 - std::abs(jet.K01); }

namespace {

// Closed forms from the derivative tables; |n| appears literally and the
// overall sign is + for n > 0 and - for n < 0 on the value row.
FlowJet mean_curv_jet(double n, double psi, double s) {
  double an = std::abs(n);
  double sg = n > 0 ? 1.0 : -1.0;
  double D = psi * psi - s * s;
  double p2 = psi * psi, s2 = s * s;
  FlowJet j;
  j.K = sg * std::pow(psi, n) / std::pow(D, n);
  j.K10 = -an * std::pow(psi, n - 1) * (p2 + s2) / std::pow(D, n + 1);
  j.K01 = 2.0 * an * s * std::pow(psi, n) / std::pow(D, n + 1);
  j.K20 = an * std::pow(psi, n - 2) *
          ((n + 1) * p2 * p2 + 2.0 * (n + 2) * p2 * s2 + (n - 1) * s2 * s2) /
          std::pow(D, n + 2);
  j.K11 = -2.0 * an * s * std::pow(psi, n - 1) * ((n + 2) * p2 + n * s2) /
          std::pow(D, n + 2);
  j.K02 = 2.0 * an * std::pow(psi, n) * (p2 + (2.0 * n + 1.0) * s2) /
          std::pow(D, n + 2);
  return j;
}

FlowJet gauss_curv_jet(double n, double psi, double s) {
  double an = std::abs(n);
  double sg = n > 0 ? 1.0 : -1.0;
  double D = psi * psi - s * s;
  double p2 = psi * psi, s2 = s * s;
  FlowJet j;
  j.K = sg / std::pow(D, n);
  j.K10 = -2.0 * an * psi / std::pow(D, n + 1);
  j.K01 = 2.0 * an * s / std::pow(D, n + 1);
  j.K20 = 2.0 * an * ((2.0 * n + 1.0) * p2 + s2) / std::pow(D, n + 2);
  j.K11 = -4.0 * an * (n + 1.0) * psi * s / std::pow(D, n + 2);
  j.K02 = 2.0 * an * (p2 + (2.0 * n + 1.0) * s2) / std::pow(D, n + 2);
  return j;
}

FlowJet mean_radius_jet(double n, double psi, double /*s*/) {
  double an = std::abs(n);
  double sg = n > 0 ? 1.0 : -1.0;
  FlowJet j;
  j.K = sg / std::pow(psi, n);
  j.K10 = -an / std::pow(psi, n + 1);
  j.K01 = 0.0;
  j.K20 = an * (n + 1.0) / std::pow(psi, n + 2);
  j.K11 = 0.0;
  j.K02 = 0.0;
  return j;
}

FlowJet weingarten_jet(double a, double b, double c, double psi, double s) {
  double D = psi * psi - s * s;
  double D2 = D * D, D3 = D2 * D;
  double p2 = psi * psi, s2 = s * s;
  FlowJet j;
  j.K = a + (2.0 * b * psi + c) / D;
  j.K10 = -2.0 * (b * (p2 + s2) + c * psi) / D2;
  j.K01 = 2.0 * s * (c + 2.0 * b * psi) / D2;
  j.K20 = 2.0 * (2.0 * b * psi * (p2 + 3.0 * s2) + c * (3.0 * p2 + s2)) / D3;
  j.K11 = -4.0 * s * (b * (3.0 * p2 + s2) + 2.0 * c * psi) / D3;
  j.K02 = 2.0 * (2.0 * b * psi * (p2 + 3.0 * s2) + c * (p2 + 3.0 * s2)) / D3;
  return j;
}

}  // namespace

FlowSpec make_flow(CatalogId id, const FlowParams& params) {
  switch (id) {
    case CatalogId::MeanCurvPow: {
      double n = params.n;
      if (n == 0.0) throw BadParams("mean_curv_pow requires n != 0");
      FlowSign sign = n > 0 ? FlowSign::Contracting : FlowSign::Expanding;
      return FlowSpec(
          "mean_curv_pow(n=" + std::to_string(n) + ")", sign,
          [n](double psi, double s) { return mean_curv_jet(n, psi, s); }, true,
          params);
    }
    case CatalogId::GaussCurvPow: {
      double n = params.n;
      if (n == 0.0) throw BadParams("gauss_curv_pow requires n != 0");
      FlowSign sign = n > 0 ? FlowSign::Contracting : FlowSign::Expanding;
      return FlowSpec(
          "gauss_curv_pow(n=" + std::to_string(n) + ")", sign,
          [n](double psi, double s) { return gauss_curv_jet(n, psi, s); }, true,
          params);
    }
    case CatalogId::MeanRadiusPow: {
      double n = params.n;
      if (n == 0.0) throw BadParams("mean_radius_pow requires n != 0");
      FlowSign sign = n > 0 ? FlowSign::Contracting : FlowSign::Expanding;
      return FlowSpec(
          "mean_radius_pow(n=" + std::to_string(n) + ")", sign,
          [n](double psi, double s) { return mean_radius_jet(n, psi, s); },
          true, params);
    }
    case CatalogId::LinearWeingarten: {
      double a = params.a, b = params.b, c = params.c;
      if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0))
        throw BadParams("linear_weingarten requires a, b, c > 0");
      FlowSpec spec(
          "linear_weingarten(a=" + std::to_string(a) +
              ",b=" + std::to_string(b) + ",c=" + std::to_string(c) + ")",
          FlowSign::Contracting,
          [a, b, c](double psi, double s) {
            return weingarten_jet(a, b, c, psi, s);
          },
          true, params);
      // Bloore abrasion model: a = 1 with b^2 > c > 0.
      spec.set_bloore(a == 1.0 && b * b > c);
      return spec;
    }
  }
  throw BadParams("unknown catalog id");
}

FlowSpec make_flow(const std::string& id, const FlowParams& params) {
  if (id == "mean_curv_pow") return make_flow(CatalogId::MeanCurvPow, params);
  if (id == "gauss_curv_pow") return make_flow(CatalogId::GaussCurvPow, params);
  if (id == "mean_radius_pow")
    return make_flow(CatalogId::MeanRadiusPow, params);
  if (id == "linear_weingarten")
    return make_flow(CatalogId::LinearWeingarten, params);
  throw BadParams("unknown flow id '" + id + "'");
}

FlowSpec negate_flow(const FlowSpec& spec) {
  FlowSign sign = spec.sign() == FlowSign::Contracting ? FlowSign::Expanding
                  : spec.sign() == FlowSign::Expanding ? FlowSign::Contracting
                                                       : FlowSign::Indefinite;
  FlowSpec inner = spec;
  return FlowSpec(
      "-(" + spec.name() + ")", sign,
      [inner](double psi, double s) {
        FlowJet j = inner.jet(psi, s);
        return FlowJet{-j.K, -j.K10, -j.K01, -j.K20, -j.K11, -j.K02};
      },
      spec.closed_form(), spec.params());
}

double hessian_det_closed(CatalogId id, const FlowParams& params, double psi,
                          double s) {
  double D = psi * psi - s * s;
  switch (id) {
    case CatalogId::MeanCurvPow: {
      double n = params.n;
      return 2.0 * n * n * (n + 1.0) * std::pow(psi, 2.0 * n - 2.0) /
             std::pow(D, 2.0 * n + 1.0);
    }
    case CatalogId::GaussCurvPow: {
      double n = params.n;
      return 4.0 * n * n * (2.0 * n + 1.0) / std::pow(D, 2.0 * n + 2.0);
    }
    case CatalogId::MeanRadiusPow:
      return 0.0;
    case CatalogId::LinearWeingarten: {
      double b = params.b, c = params.c;
      return 4.0 *
             (4.0 * b * b * (psi * psi - s * s) + 8.0 * b * c * psi +
              3.0 * c * c) /
             (D * D * D * D);
    }
  }
  throw BadParams("no closed determinant column for this flow");
}

namespace {

void track(ConditionMargin& m, double margin, double psi, double s, bool first) {
  if (first || margin < m.worst) {
    m.worst = margin;
    m.at_psi = psi;
    m.at_s = s;
  }
}

}  // namespace

ClassifyReport classify_flow(const FlowSpec& spec, const ConeRect& region,
                             int samples) {
  if (samples < 2) throw BadParams("classify_flow needs samples >= 2");
  ClassifyReport rep;
  bool first = true;
  ConditionMargin concave_k20, concave_det, exp3a, exp3b;
  double eps = 0.0;
  for (int i = 0; i < samples; ++i) {
    double psi = region.psi_min +
                 (region.psi_max - region.psi_min) * i / (samples - 1.0);
    for (int j = 0; j < samples; ++j) {
      double s =
          region.s_min + (region.s_max - region.s_min) * j / (samples - 1.0);
      if (!(psi > s) || s < 0.0)
        throw OutOfDomain("classify_flow region leaves the cone");
      FlowJet k = spec.jet(psi, s);
      double det = k.K20 * k.K02 - k.K11 * k.K11;
      track(rep.parabolic_margin, parabolicity(k), psi, s, first);
      track(rep.convex_k20, k.K20, psi, s, first);
      track(rep.convex_det, det, psi, s, first);
      track(concave_k20, -k.K20, psi, s, first);
      track(concave_det, det, psi, s, first);
      track(rep.thm3a, k.K + s * k.K01, psi, s, first);
      track(rep.thm3b, k.K01 + s * k.K02, psi, s, first);
      track(exp3a, -(k.K + s * k.K01), psi, s, first);
      track(exp3b, -(k.K01 + s * k.K02), psi, s, first);
      track(rep.thm4_margin, -k.K10 - s * std::abs(k.K20), psi, s, first);
      if (first || -k.K10 < eps) eps = -k.K10;
      if (spec.sign() == FlowSign::Contracting && k.K < -1e-12)
        rep.sign_ok = false;
      if (spec.sign() == FlowSign::Expanding && k.K > 1e-12) rep.sign_ok = false;
      first = false;
    }
  }
  rep.eps = eps;
  rep.parabolic = rep.parabolic_margin.ok();
  rep.convex = rep.convex_k20.ok() && rep.convex_det.ok();
  rep.concave = concave_k20.ok() && concave_det.ok();
  rep.thm3_contracting_ok = rep.thm3a.ok() && rep.thm3b.ok();
  rep.thm3_expanding_ok = exp3a.ok() && exp3b.ok();
  rep.thm4_ok = eps > 0.0 && rep.thm4_margin.ok();
  if (spec.name().rfind("gauss_curv_pow", 0) == 0) {
    double n = spec.params().n;
    if (n > -0.5 && n < 0.5)
      rep.notes =
          "gauss power: the Hessian determinant 4n^2(2n+1)/(psi^2-s^2)^(2n+2) "
          "is positive for all n > -1/2, while the convexity classification "
          "threshold in the literature is n >= 1/2; the empirical Hessian "
          "test above is reported as sampled.";
  }
  return rep;
}

}  // namespace rocflow
