#include "rocflow/pde.hpp"

#include <algorithm>
#include <cmath>

#include "rocflow/stencil.hpp"

namespace rocflow {

void SimConfig::validate() const {
  if (grid_n < 33 || grid_n % 2 == 0)
    throw BadParams("grid size must be odd and >= 33");
  if (!(cfl > 0.0 && cfl <= 0.5)) throw BadParams("cfl must be in (0, 0.5]");
  if (!(t_max > 0.0)) throw BadParams("t_max must be positive");
  if (record_interval < 0.0) throw BadParams("record interval must be >= 0");
  if (snapshot_count < 0) throw BadParams("snapshot count must be >= 0");
}

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::TMaxReached: return "TMaxReached";
    case StopReason::Converged: return "Converged";
    case StopReason::ConvexityLost: return "ConvexityLost";
    case StopReason::DomainExit: return "DomainExit";
  }
  return "Unknown";
}

RealFieldPair pde_rhs(const SupportField& field, const FlowSpec& flow) {
  RoCField roc = compute_roc(field);
  RealFieldPair out{ChartGrid<double>(Chart::North, field.n(), field.radius()),
                    ChartGrid<double>(Chart::South, field.n(), field.radius())};
  for (Chart c : {Chart::North, Chart::South}) {
    const auto& psi = roc.psi(c);
    const auto& sigma = roc.sigma(c);
    auto& g = c == Chart::North ? out.north : out.south;
    for (size_t k = 0; k < g.values.size(); ++k)
      g.values[k] = -flow.jet(psi.values[k], std::abs(sigma.values[k])).K;
  }
  return out;
}

double adaptive_dt(const SupportField& field, const FlowSpec& flow,
                   double cfl_factor) {
  RoCField roc = compute_roc(field);
  double worst = 0.0;
  for (Chart c : {Chart::North, Chart::South}) {
    const auto& psi = roc.psi(c);
    const auto& sigma = roc.sigma(c);
    for (int j = 0; j < psi.n; ++j)
      for (int i = 0; i < psi.n; ++i) {
        FlowJet jet = flow.jet(psi.at(i, j), std::abs(sigma.at(i, j)));
        if (-jet.K10 <= std::abs(jet.K01))
          throw NotParabolic("-K10 <= |K01| at psi = " +
                             std::to_string(psi.at(i, j)));
        double q = std::norm(psi.xi(i, j));
        double coef =
            0.5 * (1.0 + q) * (1.0 + q) * (-jet.K10 + std::abs(jet.K01));
        worst = std::max(worst, coef);
      }
  }
  return cfl_factor * field.h() * field.h() / worst;
}

namespace {

SupportField stage_field(const SupportField& base, const RealFieldPair& k,
                         double a) {
  SupportField f = base;
  for (size_t m = 0; m < f.north.values.size(); ++m) {
    f.north.values[m] += a * k.north.values[m];
    f.south.values[m] += a * k.south.values[m];
  }
  blend_overlap(f);
  return f;
}

}  // namespace

SupportField advance(const SupportField& field, const FlowSpec& flow,
                     double dt) {
  if (dt < 0.0) throw BadParams("dt must be >= 0");
  if (dt == 0.0) return field;
  RealFieldPair k1 = pde_rhs(field, flow);
  SupportField f2 = stage_field(field, k1, 0.5 * dt);
  RealFieldPair k2 = pde_rhs(f2, flow);
  SupportField f3 = stage_field(field, k2, 0.5 * dt);
  RealFieldPair k3 = pde_rhs(f3, flow);
  SupportField f4 = stage_field(field, k3, dt);
  RealFieldPair k4 = pde_rhs(f4, flow);

  SupportField out = field;
  for (size_t m = 0; m < out.north.values.size(); ++m) {
    out.north.values[m] +=
        dt / 6.0 * (k1.north.values[m] + 2.0 * k2.north.values[m] +
                    2.0 * k3.north.values[m] + k4.north.values[m]);
    out.south.values[m] +=
        dt / 6.0 * (k1.south.values[m] + 2.0 * k2.south.values[m] +
                    2.0 * k3.south.values[m] + k4.south.values[m]);
  }
  blend_overlap(out);
  out.time = field.time + dt;
  // the result must still be a valid convex state
  compute_roc(out);
  return out;
}

namespace {

MonitorSample measure(const RoCField& roc, const FlowSpec& flow, double t,
                      double& running_eps, bool first) {
  MonitorSample s;
  s.t = t;
  bool started = false;
  double inf_mk10 = 0.0;
  for (Chart c : {Chart::North, Chart::South}) {
    const auto& psi = roc.psi(c);
    const auto& sigma = roc.sigma(c);
    for (int j = 0; j < psi.n; ++j)
      for (int i = 0; i < psi.n; ++i) {
        if (std::abs(psi.xi(i, j)) > 1.0 + 1e-12) continue;
        double p = psi.at(i, j);
        double sv = std::abs(sigma.at(i, j));
        FlowJet jet = flow.jet(p, sv);
        double margin = -jet.K10 - std::abs(jet.K01);
        if (!started) {
          s.min_abs_K = std::abs(jet.K);
          s.max_psi = s.min_psi = p;
          s.max_sigma = sv;
          s.min_convexity = p - sv;
          s.parab_margin_min = s.parab_margin_max = margin;
          inf_mk10 = -jet.K10;
          started = true;
        } else {
          s.min_abs_K = std::min(s.min_abs_K, std::abs(jet.K));
          s.max_psi = std::max(s.max_psi, p);
          s.min_psi = std::min(s.min_psi, p);
          s.max_sigma = std::max(s.max_sigma, sv);
          s.min_convexity = std::min(s.min_convexity, p - sv);
          s.parab_margin_min = std::min(s.parab_margin_min, margin);
          s.parab_margin_max = std::max(s.parab_margin_max, margin);
          inf_mk10 = std::min(inf_mk10, -jet.K10);
        }
      }
  }
  running_eps = first ? inf_mk10 : std::min(running_eps, inf_mk10);
  s.epsilon = running_eps;
  return s;
}

SimVerdicts make_verdicts(const MonitorSeries& mon, const FlowSpec& flow) {
  SimVerdicts v;
  const auto& ss = mon.samples;
  const double rel = 1e-3;

  // Thm 2: min |K| nondecreasing up to rel * initial value.
  {
    double tol = rel * std::abs(ss.front().min_abs_K);
    double run_max = ss.front().min_abs_K, worst = 0.0;
    for (const auto& s : ss) {
      worst = std::max(worst, run_max - s.min_abs_K);
      run_max = std::max(run_max, s.min_abs_K);
    }
    v.thm2.applicable = true;
    v.thm2.margin = tol - worst;
    v.thm2.pass = worst <= tol;
    v.thm2.note = "min |K| monotonicity, worst drop " + std::to_string(worst);
  }

  // Thm 3: the contracting branch bounds psi above, the expanding branch
  // bounds it below.
  {
    ConeRect region;
    region.psi_min = std::max(1e-3, 0.9 * ss.back().min_psi);
    region.psi_max = 1.1 * ss.front().max_psi;
    for (const auto& s : ss) {
      region.psi_min = std::min(region.psi_min, 0.9 * s.min_psi);
      region.psi_max = std::max(region.psi_max, 1.1 * s.max_psi);
    }
    region.s_min = 0.0;
    double smax = 0.0;
    for (const auto& s : ss) smax = std::max(smax, s.max_sigma);
    region.s_max = std::min(1.2 * smax + 1e-6, 0.9 * region.psi_min);
    ClassifyReport cls = classify_flow(flow, region, 33);
    if (flow.sign() == FlowSign::Contracting && cls.thm3_contracting_ok) {
      double tol = rel * std::abs(ss.front().max_psi);
      double run_min = ss.front().max_psi, worst = 0.0;
      for (const auto& s : ss) {
        worst = std::max(worst, s.max_psi - run_min);
        run_min = std::min(run_min, s.max_psi);
      }
      v.thm3.margin = tol - worst;
      v.thm3.pass = worst <= tol;
      v.thm3.note = "contracting branch: max psi nonincreasing";
    } else if (flow.sign() == FlowSign::Expanding && cls.thm3_expanding_ok) {
      double tol = rel * std::abs(ss.front().min_psi);
      double run_max = ss.front().min_psi, worst = 0.0;
      for (const auto& s : ss) {
        worst = std::max(worst, run_max - s.min_psi);
        run_max = std::max(run_max, s.min_psi);
      }
      v.thm3.margin = tol - worst;
      v.thm3.pass = worst <= tol;
      v.thm3.note =
          "expanding branch: min psi nondecreasing (expanding flows bound "
          "psi from below, not above)";
    } else {
      v.thm3.applicable = false;
      v.thm3.note = "hypotheses not established over the visited region";
    }
  }

  // Thm 4: max |sigma| e^{eps t} nonincreasing, eps the running inf(-K10).
  {
    double v0 = ss.front().max_sigma;
    double tol = rel * std::max(v0, 1e-12);
    double run_min = v0, worst = 0.0;
    for (const auto& s : ss) {
      double val = s.max_sigma * std::exp(s.epsilon * s.t);
      worst = std::max(worst, val - run_min);
      run_min = std::min(run_min, val);
    }
    v.thm4.margin = tol - worst;
    v.thm4.pass = worst <= tol;
    v.thm4.note = "max |sigma| decay, worst rise " + std::to_string(worst);
  }
  return v;
}

}  // namespace

SimResult run_simulation(const SimConfig& config, const SupportField& initial) {
  config.validate();
  SimResult res;
  res.final_state = initial;
  res.final_state.time = 0.0;

  double running_eps = 0.0;
  double next_record = 0.0;
  double next_snapshot =
      config.snapshot_count > 0 ? config.t_max / config.snapshot_count : -1.0;

  {
    RoCField roc = compute_roc(res.final_state);
    res.monitors.samples.push_back(
        measure(roc, config.flow, 0.0, running_eps, true));
    next_record = config.record_interval;
  }

  res.reason = StopReason::TMaxReached;
  while (res.final_state.time < config.t_max - 1e-15) {
    double dt;
    SupportField next = res.final_state;
    try {
      dt = adaptive_dt(res.final_state, config.flow, config.cfl);
      dt = std::min(dt, config.t_max - res.final_state.time);
      next = advance(res.final_state, config.flow, dt);
    } catch (const NonConvex&) {
      res.reason = StopReason::ConvexityLost;
      break;
    } catch (const OutOfDomain&) {
      res.reason = StopReason::DomainExit;
      break;
    } catch (const NotParabolic&) {
      res.reason = StopReason::DomainExit;
      break;
    }

    RoCField roc = compute_roc(next, true);
    MonitorSample sample =
        measure(roc, config.flow, next.time, running_eps, false);
    if (sample.min_convexity <= config.min_convexity) {
      res.reason = StopReason::ConvexityLost;
      break;  // keep the previous, safely convex state
    }
    res.final_state = std::move(next);
    if (config.record_interval == 0.0 || sample.t >= next_record - 1e-15 ||
        sample.t >= config.t_max - 1e-15) {
      res.monitors.samples.push_back(sample);
      next_record += config.record_interval;
    }
    if (next_snapshot > 0.0 && res.final_state.time >= next_snapshot - 1e-15) {
      res.snapshots.push_back(res.final_state);
      next_snapshot += config.t_max / config.snapshot_count;
    }
    if (sample.max_psi <= config.min_psi) {
      res.reason = StopReason::Converged;
      break;
    }
  }

  res.verdicts = make_verdicts(res.monitors, config.flow);
  return res;
}

namespace {

struct ChartDerivs {
  std::vector<double> x, y, xx, xy, yy;
};

ChartDerivs all_derivs(const std::vector<double>& v, int n, double h) {
  ChartDerivs d;
  d.x = deriv_x(v, n, h);
  d.y = deriv_y(v, n, h);
  d.xx = deriv_x(d.x, n, h);
  d.xy = deriv_y(d.x, n, h);
  d.yy = deriv_y(d.y, n, h);
  return d;
}

}  // namespace

RocFlowRates rocflow_rhs(const RoCField& roc, const FlowSpec& flow) {
  FieldStats st = owned_stats(roc.psi_north, roc.psi_south);
  double smin =
      sigma_min_threshold(std::max(std::abs(st.min), std::abs(st.max)));

  const int n = roc.psi_north.n;
  const double radius = roc.psi_north.radius;
  RocFlowRates out{
      {ChartGrid<double>(Chart::North, n, radius),
       ChartGrid<double>(Chart::South, n, radius)},
      {ChartGrid<double>(Chart::North, n, radius),
       ChartGrid<double>(Chart::South, n, radius)},
      ChartGrid<double>(Chart::North, n, radius),
      ChartGrid<double>(Chart::South, n, radius)};

  // Both rates come from the compact forms
  //   d psi/dt    = -K - (1/2)(1+q)^2 ddbar K,
  //   d sigma/dt  = d((1/2)(1+q)^2 d K),     d|sigma|/dt = Re(e^{-i phi} ...),
  // with K differentiated as a grid field. The chain-rule expansion of these
  // (diffusion + gradient quadratics + the zeroth-order pair Z) is the same
  // in the continuum but needs derivatives of |sigma|, which degrade near
  // the umbilic zeros of sigma; K itself depends on |sigma| only through its
  // square and stays smooth there.
  const Complex I(0.0, 1.0);
  for (Chart c : {Chart::North, Chart::South}) {
    const auto& psi = roc.psi(c);
    ChartGrid<double> s = roc.abs_sigma(c);
    auto& dpsi = c == Chart::North ? out.dpsi.north : out.dpsi.south;
    auto& dsig = c == Chart::North ? out.dsigma.north : out.dsigma.south;
    auto& mask = c == Chart::North ? out.mask_north : out.mask_south;

    std::vector<double> kf(size_t(n) * n);
    std::vector<FlowJet> jets(size_t(n) * n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        size_t k = size_t(j) * n + i;
        jets[k] = flow.jet(psi.at(i, j), s.at(i, j));
        kf[k] = jets[k].K;
      }
    std::vector<double> kx = deriv_x(kf, n, psi.h);
    std::vector<double> ky = deriv_y(kf, n, psi.h);
    std::vector<double> kxx = deriv_x(kx, n, psi.h);
    std::vector<double> kyy = deriv_y(ky, n, psi.h);
    std::vector<Complex> g(size_t(n) * n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        size_t k = size_t(j) * n + i;
        double q = std::norm(psi.xi(i, j));
        g[k] = 0.25 * (1.0 + q) * (1.0 + q) * Complex(kx[k], -ky[k]);
      }
    std::vector<Complex> gx = deriv_x(g, n, psi.h);
    std::vector<Complex> gy = deriv_y(g, n, psi.h);

    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        size_t k = size_t(j) * n + i;
        double sv = s.at(i, j);
        const FlowJet& jet = jets[k];
        if (sv <= smin) {
          dpsi.at(i, j) = -jet.K - sv * jet.K01;
          dsig.at(i, j) = sv * jet.K10;
          mask.at(i, j) = 0.0;
          continue;
        }
        double q = std::norm(psi.xi(i, j));
        Complex emphi = std::conj(roc.sigma(c).at(i, j)) / sv;
        Complex sigma_t = 0.5 * (gx[k] - I * gy[k]);
        dpsi.at(i, j) =
            -jet.K - 0.125 * (1.0 + q) * (1.0 + q) * (kxx[k] + kyy[k]);
        dsig.at(i, j) = (emphi * sigma_t).real();
        mask.at(i, j) = 1.0;
      }
  }
  return out;
}

SolitonReport soliton_residual(const SupportField& field, const FlowSpec& flow) {
  RoCField roc = compute_roc(field);
  SolitonReport rep;
  double num = 0.0, den = 0.0;
  for (Chart c : {Chart::North, Chart::South}) {
    const auto& r = field.grid(c);
    const auto& psi = roc.psi(c);
    const auto& sigma = roc.sigma(c);
    for (int j = 0; j < r.n; ++j)
      for (int i = 0; i < r.n; ++i) {
        Complex xi = r.xi(i, j);
        double w = chart_weight(std::abs(xi), r.radius);
        if (w == 0.0) continue;
        double q = std::norm(xi);
        double dA = w * 4.0 * r.h * r.h / ((1.0 + q) * (1.0 + q));
        double K = flow.jet(psi.at(i, j), std::abs(sigma.at(i, j))).K;
        num += dA * r.at(i, j) * K;
        den += dA * r.at(i, j) * r.at(i, j);
      }
  }
  rep.lambda = num / den;

  double sum = 0.0, area = 0.0;
  for (Chart c : {Chart::North, Chart::South}) {
    const auto& r = field.grid(c);
    const auto& psi = roc.psi(c);
    const auto& sigma = roc.sigma(c);
    for (int j = 0; j < r.n; ++j)
      for (int i = 0; i < r.n; ++i) {
        Complex xi = r.xi(i, j);
        double w = chart_weight(std::abs(xi), r.radius);
        if (w == 0.0) continue;
        double q = std::norm(xi);
        double dA = w * 4.0 * r.h * r.h / ((1.0 + q) * (1.0 + q));
        double K = flow.jet(psi.at(i, j), std::abs(sigma.at(i, j))).K;
        double res = std::abs(rep.lambda * r.at(i, j) - K);
        rep.max_residual = std::max(rep.max_residual, res);
        sum += dA * res;
        area += dA;
      }
  }
  rep.mean_residual = sum / area;
  return rep;
}

}  // namespace rocflow
