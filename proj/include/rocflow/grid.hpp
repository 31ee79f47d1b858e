#ifndef ROCFLOW_GRID_HPP
#define ROCFLOW_GRID_HPP

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "rocflow/errors.hpp"

namespace rocflow {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;

enum class Chart { North, South };

inline Chart other_chart(Chart c) {
  return c == Chart::North ? Chart::South : Chart::North;
}

// Default chart radius; the two charts overlap on 1/R_c <= |xi| <= R_c.
inline constexpr double kChartRadius = 1.25;

// Unit normal direction for a chart coordinate. The south chart is the
// standard stereographic chart post-composed with the rotation
// diag(1,-1,-1); the transition map between chart coordinates is xi -> 1/xi.
inline Vec3 chart_normal(Complex xi, Chart chart) {
  double q = std::norm(xi);
  double d = 1.0 + q;
  if (chart == Chart::North)
    return {2.0 * xi.real() / d, 2.0 * xi.imag() / d, (1.0 - q) / d};
  return {2.0 * xi.real() / d, -2.0 * xi.imag() / d, (q - 1.0) / d};
}

// Smooth partition-of-unity weight in |xi|: 1 for |xi| <= 1/R_c, 0 for
// |xi| >= R_c, quintic in log|xi| in between, with w(q) + w(1/q) = 1.
double chart_weight(double abs_xi, double chart_radius = kChartRadius);

// Uniform square grid [-R_c, R_c]^2 in the stereographic coordinate plane,
// odd dimensions so xi = 0 is a node.
template <class T>
struct ChartGrid {
  Chart chart_id = Chart::North;
  int n = 0;          // nodes per side, odd
  double h = 0.0;     // spacing
  double radius = kChartRadius;
  std::vector<T> values;

  ChartGrid() = default;
  ChartGrid(Chart chart, int n_, double chart_radius = kChartRadius)
      : chart_id(chart), n(n_), radius(chart_radius) {
    if (n < 3 || n % 2 == 0)
      throw BadParams("chart grid size must be odd and >= 3");
    if (!(radius > 1.0)) throw BadParams("chart radius must exceed 1");
    h = 2.0 * radius / (n - 1);
    values.assign(size_t(n) * n, T{});
  }

  double coord(int i) const { return -radius + h * i; }
  Complex xi(int i, int j) const { return {coord(i), coord(j)}; }
  T& at(int i, int j) { return values[size_t(j) * n + i]; }
  const T& at(int i, int j) const { return values[size_t(j) * n + i]; }

  template <class F>
  void fill(F&& f) {
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) at(i, j) = f(xi(i, j));
  }
};

// Cubic Lagrange interpolation on the 4x4 neighborhood of (x, y); fourth
// order for smooth data. The window shifts inward near the square edge.
template <class T>
T interp_bicubic(const ChartGrid<T>& g, double x, double y);

double bicubic_real(const ChartGrid<double>& g, double x, double y);
Complex bicubic_complex(const ChartGrid<Complex>& g, double x, double y);

// Max |north(xi) - south(1/xi)| over annulus nodes, for scalar fields that
// agree across charts (r, psi, |sigma|).
double overlap_error(const ChartGrid<double>& north,
                     const ChartGrid<double>& south);

// The surface state: support function samples on both charts.
struct SupportField {
  ChartGrid<double> north;
  ChartGrid<double> south;
  double time = 0.0;

  const ChartGrid<double>& grid(Chart c) const {
    return c == Chart::North ? north : south;
  }
  ChartGrid<double>& grid(Chart c) { return c == Chart::North ? north : south; }
  int n() const { return north.n; }
  double h() const { return north.h; }
  double radius() const { return north.radius; }
};

// Samples r(n) on both charts. Re-centers by the Steiner point if min r <= 0
// and checks overlap consistency (tolerance 10 h^4 * max|r|).
SupportField make_support_field(const std::function<double(const Vec3&)>& r_of_n,
                                int n, double chart_radius = kChartRadius);

// Construct from raw chart values (deserialization); same checks.
SupportField make_support_field(ChartGrid<double> north,
                                ChartGrid<double> south, double time);

// Blends each chart's overlap band toward the other chart with the
// partition-of-unity weights; keeps the two charts consistent during
// evolution.
void blend_overlap(SupportField& field);
void blend_overlap(ChartGrid<double>& a, ChartGrid<double>& b);

double min_value(const ChartGrid<double>& g);
double max_value(const ChartGrid<double>& g);

// Extrema restricted to the owned disk |xi| <= 1 of each chart (the two
// owned disks cover the sphere).
double owned_min(const SupportField& f);
struct FieldStats {
  double min = 0.0, max = 0.0;
};
FieldStats owned_stats(const ChartGrid<double>& north,
                       const ChartGrid<double>& south);

}  // namespace rocflow

#endif
