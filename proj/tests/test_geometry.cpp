#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rocflow/geometry.hpp"

using namespace rocflow;

namespace {

SupportField perturbed_sphere(double amp, int n) {
  return make_support_field(
      [amp](const Vec3& u) { return 1.0 + amp * (u[0] * u[0] - u[1] * u[1]); },
      n);
}

}  // namespace

TEST_CASE("round sphere has constant psi and vanishing sigma") {
  auto f = make_support_field([](const Vec3&) { return 2.0; }, 33);
  RoCField roc = compute_roc(f);
  for (Chart c : {Chart::North, Chart::South}) {
    for (double v : roc.psi(c).values) CHECK(v == 2.0);
    for (Complex s : roc.sigma(c).values) CHECK(std::abs(s) == 0.0);
  }
  CHECK(roc.convexity_margin == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(roc.max_im_psi == 0.0);
}

TEST_CASE("translated sphere keeps the radius-one RoC data") {
  auto f = make_support_field([](const Vec3& u) { return 1.0 + 0.3 * u[2]; }, 65);
  RoCField roc = compute_roc(f);
  FieldStats st = owned_stats(roc.psi_north, roc.psi_south);
  CHECK(st.min == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(st.max == doctest::Approx(1.0).epsilon(1e-4));
  double smax = 0.0;
  for (Chart c : {Chart::North, Chart::South})
    for (Complex s : roc.sigma(c).values) smax = std::max(smax, std::abs(s));
  CHECK(smax < 1e-3);
}

TEST_CASE("reconstruction satisfies the support identity") {
  SupportField f = perturbed_sphere(0.05, 33);
  SurfaceMesh mesh = reconstruct_surface(f);
  CHECK(mesh.vertices.size() == mesh.normals.size());
  CHECK(!mesh.quads.empty());
  for (size_t k = 0; k < mesh.vertices.size(); ++k) {
    const Vec3& p = mesh.vertices[k];
    const Vec3& u = mesh.normals[k];
    double dot = p[0] * u[0] + p[1] * u[1] + p[2] * u[2];
    CHECK(dot == doctest::Approx(mesh.support[k]).epsilon(1e-10));
  }
  for (const auto& q : mesh.quads)
    for (int idx : q) {
      CHECK(idx >= 0);
      CHECK(idx < int(mesh.vertices.size()));
    }
}

TEST_CASE("codazzi residual is small for a genuine surface") {
  SupportField f = perturbed_sphere(0.05, 65);
  double r65 = owned_max(codazzi_residual(f));
  CHECK(r65 < 1e-4);
  double r33 = owned_max(codazzi_residual(perturbed_sphere(0.05, 33)));
  CHECK(r65 < r33);  // shrinks under refinement
}

TEST_CASE("large perturbations are flagged as non-convex") {
  SupportField f = perturbed_sphere(0.7, 33);
  CHECK_THROWS_AS(compute_roc(f), NonConvex);
  RoCField roc = compute_roc(f, true);
  CHECK(!roc.convex);
  CHECK(roc.convexity_margin < 0.0);
}

TEST_CASE("surfaces of revolution trace a curve in the RoC diagram") {
  auto f = make_support_field(
      [](const Vec3& u) { return 1.0 + 0.1 * u[2] * u[2]; }, 65);
  RoCField roc = compute_roc(f);
  HyperbolicArea area = hyperbolic_roc_area(roc);
  CHECK(std::abs(area.value) < 5e-2);
  CHECK(area.excluded_area >= 0.0);
}

TEST_CASE("umbilic slope sampling") {
  {  // exact sphere: every ray is degenerate
    auto f = make_support_field([](const Vec3&) { return 1.0; }, 33);
    RoCField roc = compute_roc(f);
    UmbilicSlopeReport rep = umbilic_kappa(roc, {Chart::North, 16, 16});
    CHECK(rep.indeterminate);
  }
  {  // a clearly non-umbilic seed is rejected
    SupportField f = perturbed_sphere(0.05, 33);
    RoCField roc = compute_roc(f);
    CHECK_THROWS_AS(umbilic_kappa(roc, {Chart::North, 24, 16}), NotUmbilic);
  }
  {  // pole of a surface of revolution is an umbilic
    auto f = make_support_field(
        [](const Vec3& u) { return 1.0 + 0.1 * u[2] * u[2]; }, 65);
    RoCField roc = compute_roc(f);
    UmbilicSlopeReport rep = umbilic_kappa(roc, {Chart::North, 32, 32});
    CHECK(!rep.samples.empty());
    CHECK(rep.spread >= 0.0);
  }
}

TEST_CASE("tolerance helpers scale as documented") {
  CHECK(tol_overlap(0.1, 2.0) == doctest::Approx(2e-3).epsilon(1e-12));
  CHECK(tol_im(0.1, 1.0) == doctest::Approx(1e-3).epsilon(1e-12));
  CHECK(sigma_min_threshold(2.0) == doctest::Approx(2e-6).epsilon(1e-12));
  CHECK(sigma_umb_threshold(1.5) == doctest::Approx(0.03).epsilon(1e-12));
}
