#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rocflow/pde.hpp"
#include "rocflow/parser.hpp"

using namespace rocflow;

namespace {

SupportField sphere(double radius, int n) {
  return make_support_field([radius](const Vec3&) { return radius; }, n);
}

SupportField perturbed_sphere(double amp, int n) {
  return make_support_field(
      [amp](const Vec3& u) { return 1.0 + amp * (u[0] * u[0] - u[1] * u[1]); },
      n);
}

FlowSpec mcf() { return make_flow(CatalogId::MeanCurvPow, {1.0, 0, 0, 0}); }

}  // namespace

TEST_CASE("pde_rhs on round spheres is the scalar speed") {
  SupportField f = sphere(1.0, 33);
  for (auto [flow, want] :
       {std::pair{mcf(), -1.0},
        std::pair{make_flow(CatalogId::GaussCurvPow, {1.0, 0, 0, 0}), -1.0},
        std::pair{make_flow(CatalogId::MeanRadiusPow, {-1.0, 0, 0, 0}), 1.0}}) {
    RealFieldPair rhs = pde_rhs(f, flow);
    for (const auto* g : {&rhs.north, &rhs.south})
      for (double v : g->values) CHECK(v == doctest::Approx(want).epsilon(1e-13));
  }
}

TEST_CASE("adaptive step scales like h^2") {
  FlowSpec flow = mcf();
  double d33 = adaptive_dt(sphere(1.0, 33), flow, 0.2);
  double d65 = adaptive_dt(sphere(1.0, 65), flow, 0.2);
  CHECK(d33 / d65 == doctest::Approx(4.0).epsilon(1e-2));
  CHECK(d33 > 0.0);
  CHECK_THROWS_AS(adaptive_dt(sphere(1.0, 33), make_expression_flow("1"), 0.2),
                  NotParabolic);
}

TEST_CASE("a zero step is the identity") {
  SupportField f = sphere(1.0, 33);
  SupportField g = advance(f, mcf(), 0.0);
  for (Chart c : {Chart::North, Chart::South})
    for (double v : g.grid(c).values)
      CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("one RK4 step of a shrinking sphere matches the closed form") {
  const double dt = 1e-4;
  SupportField g = advance(sphere(1.0, 33), mcf(), dt);
  double want = std::sqrt(1.0 - 2.0 * dt);
  for (Chart c : {Chart::North, Chart::South})
    for (double v : g.grid(c).values)
      CHECK(v == doctest::Approx(want).epsilon(1e-10));
  CHECK(g.time == doctest::Approx(dt));
}

TEST_CASE("gauss flow sphere to t = 0.1") {
  SimConfig cfg;
  cfg.flow = make_flow(CatalogId::GaussCurvPow, {1.0, 0, 0, 0});
  cfg.grid_n = 33;
  cfg.t_max = 0.1;
  SimResult res = run_simulation(cfg, sphere(1.0, 33));
  CHECK(res.reason == StopReason::TMaxReached);
  double want = std::cbrt(1.0 - 3.0 * 0.1);
  FieldStats st = owned_stats(res.final_state.north, res.final_state.south);
  CHECK(st.min == doctest::Approx(want).epsilon(1e-6));
  CHECK(st.max == doctest::Approx(want).epsilon(1e-6));
  CHECK(!res.monitors.samples.empty());
  for (size_t k = 1; k < res.monitors.samples.size(); ++k)
    CHECK(res.monitors.samples[k].t > res.monitors.samples[k - 1].t);
  CHECK(res.monitors.samples.back().epsilon > 0.0);
}

TEST_CASE("a tiny sphere converges before t_max") {
  SimConfig cfg;
  cfg.flow = mcf();
  cfg.grid_n = 33;
  cfg.t_max = 0.02;
  cfg.min_psi = 0.05;
  SimResult res = run_simulation(cfg, sphere(0.15, 33));
  CHECK(res.reason == StopReason::Converged);
  CHECK(res.final_state.time < 0.02);
}

TEST_CASE("maximum principle verdicts on a perturbed sphere") {
  SimConfig cfg;
  cfg.flow = mcf();
  cfg.grid_n = 33;
  cfg.t_max = 0.02;
  SimResult res = run_simulation(cfg, perturbed_sphere(0.05, 33));
  CHECK(res.reason == StopReason::TMaxReached);
  CHECK(res.verdicts.thm2.applicable);
  CHECK(res.verdicts.thm2.pass);
  CHECK(res.verdicts.thm3.applicable);
  CHECK(res.verdicts.thm3.pass);
  CHECK(res.verdicts.thm4.applicable);
  CHECK(res.verdicts.thm4.pass);
}

TEST_CASE("rocflow rates on a round sphere are zeroth order only") {
  SupportField f = sphere(2.0, 33);
  RoCField roc = compute_roc(f);
  RocFlowRates rates = rocflow_rhs(roc, mcf());
  for (Chart c : {Chart::North, Chart::South}) {
    const auto& m = rates.mask(c);
    const auto& dp = rates.dpsi.grid(c);
    const auto& ds = rates.dsigma.grid(c);
    for (int j = 0; j < m.n; ++j)
      for (int i = 0; i < m.n; ++i) {
        CHECK(m.at(i, j) == 0.0);
        CHECK(dp.at(i, j) == doctest::Approx(-0.5).epsilon(1e-12));  // -K
        CHECK(std::abs(ds.at(i, j)) < 1e-12);
      }
  }
}

TEST_CASE("rocflow rates agree with a centered time difference") {
  SupportField f = perturbed_sphere(0.03, 65);
  FlowSpec flow = mcf();
  RoCField roc = compute_roc(f);
  RocFlowRates rates = rocflow_rhs(roc, flow);

  // bare Euler shifts: the per-stage chart re-blending in advance() would
  // inject band noise amplified by 1/(2 delta)
  double delta = 1e-6;
  RealFieldPair rhs = pde_rhs(f, flow);
  SupportField plus_f = f, minus_f = f;
  for (Chart c : {Chart::North, Chart::South})
    for (size_t k = 0; k < plus_f.grid(c).values.size(); ++k) {
      plus_f.grid(c).values[k] += delta * rhs.grid(c).values[k];
      minus_f.grid(c).values[k] -= delta * rhs.grid(c).values[k];
    }
  RoCField plus = compute_roc(plus_f, true);
  RoCField minus = compute_roc(minus_f, true);

  double scale_p = 0.0, scale_s = 0.0;
  for (Chart c : {Chart::North, Chart::South}) {
    const auto& g = rates.dpsi.grid(c);
    const auto& gs = rates.dsigma.grid(c);
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i)
        if (std::abs(g.xi(i, j)) <= 1.0) {
          scale_p = std::max(scale_p, std::abs(g.at(i, j)));
          scale_s = std::max(scale_s, std::abs(gs.at(i, j)));
        }
  }
  double worst_p = 0.0, worst_s = 0.0;
  for (Chart c : {Chart::North, Chart::South}) {
    const auto& m = rates.mask(c);
    for (int j = 0; j < m.n; ++j)
      for (int i = 0; i < m.n; ++i) {
        if (std::abs(m.xi(i, j)) > 1.0 || m.at(i, j) == 0.0) continue;
        double fd_p = (plus.psi(c).at(i, j) - minus.psi(c).at(i, j)) / (2 * delta);
        double fd_s = (std::abs(plus.sigma(c).at(i, j)) -
                       std::abs(minus.sigma(c).at(i, j))) / (2 * delta);
        double ref_p = rates.dpsi.grid(c).at(i, j);
        double ref_s = rates.dsigma.grid(c).at(i, j);
        worst_p = std::max(worst_p, std::abs(fd_p - ref_p) /
                                        std::max(std::abs(ref_p), 1e-3 * scale_p));
        worst_s = std::max(worst_s, std::abs(fd_s - ref_s) /
                                        std::max(std::abs(ref_s), 1e-3 * scale_s));
      }
  }
  CHECK(worst_p < 5e-3);
  CHECK(worst_s < 5e-3);
}

TEST_CASE("soliton fit") {
  {
    SolitonReport rep = soliton_residual(sphere(1.0, 33), mcf());
    CHECK(rep.lambda == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rep.max_residual < 1e-8);
  }
  {
    SolitonReport rep = soliton_residual(
        sphere(2.0, 33), make_flow(CatalogId::GaussCurvPow, {1.0, 0, 0, 0}));
    CHECK(rep.lambda == doctest::Approx(0.125).epsilon(1e-10));
    CHECK(rep.max_residual < 1e-8);
  }
  {
    SolitonReport rep = soliton_residual(perturbed_sphere(0.05, 65), mcf());
    CHECK(rep.max_residual > 1e-3);
  }
}

TEST_CASE("config validation") {
  SimConfig cfg;
  cfg.flow = mcf();
  cfg.grid_n = 32;
  CHECK_THROWS_AS(cfg.validate(), BadParams);
  cfg.grid_n = 65;
  cfg.cfl = 0.0;
  CHECK_THROWS_AS(cfg.validate(), BadParams);
  cfg.cfl = 0.2;
  cfg.t_max = -1.0;
  CHECK_THROWS_AS(cfg.validate(), BadParams);
}
