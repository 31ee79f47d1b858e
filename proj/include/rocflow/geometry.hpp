#ifndef ROCFLOW_GEOMETRY_HPP
#define ROCFLOW_GEOMETRY_HPP

#include <optional>
#include <vector>

#include "rocflow/grid.hpp"

namespace rocflow {

// Derived curvature data: psi = (r1+r2)/2 and sigma with |sigma| = (r1-r2)/2.
struct RoCField {
  ChartGrid<double> psi_north, psi_south;
  ChartGrid<Complex> sigma_north, sigma_south;
  double convexity_margin = 0.0;  // min over owned nodes of psi - |sigma|
  double max_im_psi = 0.0;        // discretization diagnostic
  bool convex = true;

  const ChartGrid<double>& psi(Chart c) const {
    return c == Chart::North ? psi_north : psi_south;
  }
  const ChartGrid<Complex>& sigma(Chart c) const {
    return c == Chart::North ? sigma_north : sigma_south;
  }
  ChartGrid<double> abs_sigma(Chart c) const;
};

struct SurfaceMesh {
  std::vector<Vec3> vertices;
  std::vector<Vec3> normals;
  std::vector<double> support;            // r per vertex
  std::vector<std::array<int, 4>> quads;  // indices into vertices
};

// F = (1/2)(1+|xi|^2)^2 dbar r on each chart.
struct ComplexFieldPair {
  ChartGrid<Complex> north, south;
  const ChartGrid<Complex>& grid(Chart c) const {
    return c == Chart::North ? north : south;
  }
};
ComplexFieldPair compute_F(const SupportField& field);

// psi = r + (1+|xi|^2)^2 d(F/(1+|xi|^2)^2), sigma = -d(conj F).
// Throws NonRealPsi when the imaginary diagnostic exceeds its tolerance and,
// unless allow_nonconvex, NonConvex when psi - |sigma| <= 0 somewhere.
RoCField compute_roc(const SupportField& field, bool allow_nonconvex = false);

// Surface points from the support function and its first derivatives.
SurfaceMesh reconstruct_surface(const SupportField& field);

// Pointwise |d psi + (1+|xi|^2)^2 dbar(sigma/(1+|xi|^2)^2)|; zero for any
// genuine surface, so this measures discretization error.
struct RealFieldPair {
  ChartGrid<double> north, south;
  const ChartGrid<double>& grid(Chart c) const {
    return c == Chart::North ? north : south;
  }
};
RealFieldPair codazzi_residual(const SupportField& field);
RealFieldPair codazzi_residual(const RoCField& roc);

// Max of a diagnostic field over the owned disks |xi| <= 1.
double owned_max(const RealFieldPair& f);

// Signed pullback of the hyperbolic area 2-form of the RoC diagram.
struct HyperbolicArea {
  double value = 0.0;
  double excluded_area = 0.0;  // spherical area of the |sigma| <= sigma_min cut
};
HyperbolicArea hyperbolic_roc_area(const RoCField& roc);

struct GridNode {
  Chart chart = Chart::North;
  int i = 0, j = 0;
};

struct UmbilicSlopeReport {
  std::vector<double> samples;  // (psi(p) - psi(p0)) / |sigma(p)| per ray
  double spread = 0.0;          // max - min over well-defined samples
  bool indeterminate = false;   // |sigma| too small along the rays (round sphere)
};

// Directional slope of the RoC diagram at an umbilic: rays in `directions`
// directions at three radii. Throws NotUmbilic when |sigma| at the seed is
// not small.
UmbilicSlopeReport umbilic_kappa(const RoCField& roc, const GridNode& seed,
                                 int directions = 16);

// Scale-relative tolerances (see the field invariants).
double tol_overlap(double h, double scale);
double tol_im(double h, double psi_scale);
double sigma_min_threshold(double psi_scale);
double sigma_umb_threshold(double mean_psi);

double mean_owned_psi(const RoCField& roc);

}  // namespace rocflow

#endif
