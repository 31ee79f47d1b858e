#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rocflow/catalog.hpp"

using namespace rocflow;

namespace {
const double kTol = 1e-12;
}

TEST_CASE("mean curvature power flow at (2, 1)") {
  FlowSpec f = make_flow(CatalogId::MeanCurvPow, {1.0, 0, 0, 0});
  FlowJet j = f.jet(2.0, 1.0);
  CHECK(j.K == doctest::Approx(2.0 / 3.0).epsilon(kTol));
  CHECK(j.K10 == doctest::Approx(-5.0 / 9.0).epsilon(kTol));
  CHECK(j.K01 == doctest::Approx(4.0 / 9.0).epsilon(kTol));
  CHECK(j.K20 == doctest::Approx(28.0 / 27.0).epsilon(kTol));
  CHECK(j.K11 == doctest::Approx(-26.0 / 27.0).epsilon(kTol));
  CHECK(j.K02 == doctest::Approx(28.0 / 27.0).epsilon(kTol));
  CHECK(f.sign() == FlowSign::Contracting);
}

TEST_CASE("gauss curvature power flow at (2, 1)") {
  FlowSpec f = make_flow(CatalogId::GaussCurvPow, {1.0, 0, 0, 0});
  FlowJet j = f.jet(2.0, 1.0);
  CHECK(j.K == doctest::Approx(1.0 / 3.0).epsilon(kTol));
  CHECK(j.K10 == doctest::Approx(-4.0 / 9.0).epsilon(kTol));
  CHECK(j.K01 == doctest::Approx(2.0 / 9.0).epsilon(kTol));
}

TEST_CASE("mean radius power flow at (2, 0.5)") {
  FlowSpec f = make_flow(CatalogId::MeanRadiusPow, {1.0, 0, 0, 0});
  FlowJet j = f.jet(2.0, 0.5);
  CHECK(j.K == doctest::Approx(0.5).epsilon(kTol));
  CHECK(j.K10 == doctest::Approx(-0.25).epsilon(kTol));
  CHECK(j.K01 == 0.0);
  CHECK(j.K20 == doctest::Approx(0.25).epsilon(kTol));
  CHECK(j.K11 == 0.0);
  CHECK(j.K02 == 0.0);
}

TEST_CASE("linear Weingarten flow at (2, 1)") {
  FlowSpec f = make_flow(CatalogId::LinearWeingarten, {1.0, 1.0, 2.0, 1.0});
  FlowJet j = f.jet(2.0, 1.0);
  CHECK(j.K == doctest::Approx(4.0).epsilon(kTol));
  CHECK(j.K10 == doctest::Approx(-8.0 / 3.0).epsilon(kTol));
  CHECK(j.K01 == doctest::Approx(2.0).epsilon(kTol));
  double det = j.K20 * j.K02 - j.K11 * j.K11;
  CHECK(det == doctest::Approx(2988.0 / 729.0).epsilon(1e-10));
  CHECK(det ==
        doctest::Approx(hessian_det_closed(CatalogId::LinearWeingarten,
                                           {1.0, 1.0, 2.0, 1.0}, 2.0, 1.0))
            .epsilon(1e-12));
  CHECK(f.bloore());
  CHECK(!make_flow(CatalogId::LinearWeingarten, {1.0, 2.0, 2.0, 1.0}).bloore());
  CHECK(!make_flow(CatalogId::LinearWeingarten, {1.0, 1.0, 1.0, 2.0}).bloore());
}

TEST_CASE("round sphere values") {
  CHECK(make_flow(CatalogId::MeanCurvPow, {1.0, 0, 0, 0}).jet(2.0, 0.0).K ==
        doctest::Approx(0.5).epsilon(kTol));
  CHECK(make_flow(CatalogId::GaussCurvPow, {1.0, 0, 0, 0}).jet(2.0, 0.0).K ==
        doctest::Approx(0.25).epsilon(kTol));
}

TEST_CASE("expanding flows carry the negative sign") {
  FlowSpec f = make_flow(CatalogId::MeanRadiusPow, {-1.0, 0, 0, 0});
  CHECK(f.sign() == FlowSign::Expanding);
  FlowJet j = f.jet(2.0, 0.5);
  CHECK(j.K == doctest::Approx(-2.0).epsilon(kTol));  // K = -psi
  CHECK(j.K10 == doctest::Approx(-1.0).epsilon(kTol));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(make_flow(CatalogId::MeanCurvPow, {0.0, 0, 0, 0}), BadParams);
  CHECK_THROWS_AS(make_flow(CatalogId::GaussCurvPow, {0.0, 0, 0, 0}), BadParams);
  CHECK_THROWS_AS(make_flow(CatalogId::LinearWeingarten, {1.0, 0.0, 2.0, 1.0}),
                  BadParams);
  CHECK_THROWS_AS(make_flow("no_such_flow", {}), BadParams);
  CHECK(make_flow("mean_curv_pow", {2.0, 0, 0, 0}).closed_form());
}

TEST_CASE("jets are restricted to the open cone") {
  FlowSpec f = make_flow(CatalogId::MeanCurvPow, {1.0, 0, 0, 0});
  CHECK_THROWS_AS(f.jet(1.0, 2.0), OutOfDomain);
  CHECK_THROWS_AS(f.jet(1.0, 1.0), OutOfDomain);
  CHECK_THROWS_AS(f.jet(1.0, -0.1), OutOfDomain);
  CHECK_NOTHROW(f.jet(1.0, 0.0));
}

TEST_CASE("negation flips the whole jet and the sign tag") {
  FlowSpec f = make_flow(CatalogId::MeanCurvPow, {1.0, 0, 0, 0});
  FlowSpec g = negate_flow(f);
  CHECK(g.sign() == FlowSign::Expanding);
  FlowJet a = f.jet(2.0, 1.0), b = g.jet(2.0, 1.0);
  CHECK(b.K == -a.K);
  CHECK(b.K10 == -a.K10);
  CHECK(b.K11 == -a.K11);
}

TEST_CASE("parabolicity margin") {
  FlowSpec f = make_flow(CatalogId::MeanCurvPow, {1.0, 0, 0, 0});
  CHECK(parabolicity(f.jet(2.0, 1.0)) == doctest::Approx(1.0 / 9.0).epsilon(kTol));
}

TEST_CASE("classification of the catalog flows") {
  ConeRect region{1.0, 3.0, 0.0, 0.9};
  {
    auto rep = classify_flow(make_flow(CatalogId::MeanCurvPow, {1.0, 0, 0, 0}),
                             region, 21);
    CHECK(rep.parabolic);
    CHECK(rep.thm3_contracting_ok);
    CHECK(rep.sign_ok);
    CHECK(rep.eps > 0.0);
    // the stronger decay hypothesis needs -K10 >= s |K20|, which fails near
    // the cone boundary but holds on a shallower band
    CHECK(!rep.thm4_ok);
    auto shallow = classify_flow(make_flow(CatalogId::MeanCurvPow, {1.0, 0, 0, 0}),
                                 ConeRect{1.0, 3.0, 0.0, 0.3}, 21);
    CHECK(shallow.thm4_ok);
  }
  {
    auto rep = classify_flow(
        make_flow(CatalogId::MeanRadiusPow, {-1.0, 0, 0, 0}), region, 21);
    CHECK(rep.parabolic);
    CHECK(rep.thm3_expanding_ok);
    CHECK(!rep.thm3_contracting_ok);
    CHECK(rep.sign_ok);
  }
  {
    auto rep = classify_flow(
        make_flow(CatalogId::GaussCurvPow, {0.25, 0, 0, 0}), region, 21);
    CHECK(!rep.notes.empty());  // the near-threshold convexity discrepancy
  }
  CHECK_THROWS_AS(
      classify_flow(make_flow(CatalogId::MeanCurvPow, {1.0, 0, 0, 0}),
                    ConeRect{0.5, 3.0, 0.0, 0.9}, 11),
      OutOfDomain);
}
