#include "rocflow/grid.hpp"

#include <algorithm>
#include <cmath>

namespace rocflow {

double chart_weight(double abs_xi, double chart_radius) {
  if (abs_xi <= 1.0 / chart_radius) return 1.0;
  if (abs_xi >= chart_radius) return 0.0;
  // u in (-1, 1) across the annulus, symmetric under xi -> 1/xi.
  double u = std::log(abs_xi) / std::log(chart_radius);
  double t = 0.5 * (1.0 - u);
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

namespace {

inline void cubic_weights(double f, double w[4]) {
  // Lagrange weights for nodes at -1, 0, 1, 2 relative to the cell origin.
  w[0] = -f * (f - 1.0) * (f - 2.0) / 6.0;
  w[1] = (f + 1.0) * (f - 1.0) * (f - 2.0) / 2.0;
  w[2] = -(f + 1.0) * f * (f - 2.0) / 2.0;
  w[3] = (f + 1.0) * f * (f - 1.0) / 6.0;
}

}  // namespace

template <class T>
T interp_bicubic(const ChartGrid<T>& g, double x, double y) {
  double gx = (x + g.radius) / g.h;
  double gy = (y + g.radius) / g.h;
  int i0 = std::clamp(int(std::floor(gx)) - 1, 0, g.n - 4);
  int j0 = std::clamp(int(std::floor(gy)) - 1, 0, g.n - 4);
  double wx[4], wy[4];
  cubic_weights(gx - (i0 + 1), wx);
  cubic_weights(gy - (j0 + 1), wy);
  T acc{};
  for (int b = 0; b < 4; ++b) {
    T row{};
    for (int a = 0; a < 4; ++a) row += wx[a] * g.at(i0 + a, j0 + b);
    acc += wy[b] * row;
  }
  return acc;
}

double bicubic_real(const ChartGrid<double>& g, double x, double y) {
  return interp_bicubic(g, x, y);
}

Complex bicubic_complex(const ChartGrid<Complex>& g, double x, double y) {
  return interp_bicubic(g, x, y);
}

double overlap_error(const ChartGrid<double>& north,
                     const ChartGrid<double>& south) {
  double worst = 0.0;
  double lo = 1.0 / north.radius;
  for (int j = 0; j < north.n; ++j)
    for (int i = 0; i < north.n; ++i) {
      Complex xi = north.xi(i, j);
      double a = std::abs(xi);
      if (a < lo || a > north.radius) continue;
      Complex zeta = 1.0 / xi;
      double other = interp_bicubic(south, zeta.real(), zeta.imag());
      worst = std::max(worst, std::abs(north.at(i, j) - other));
    }
  return worst;
}

namespace {

void sample_field(SupportField& f,
                  const std::function<double(const Vec3&)>& r_of_n) {
  for (Chart c : {Chart::North, Chart::South}) {
    auto& g = f.grid(c);
    g.fill([&](Complex xi) { return r_of_n(chart_normal(xi, c)); });
  }
}

// Steiner point: (3 / 4pi) * integral of r(u) u over the unit sphere,
// evaluated with partition-of-unity weights and the spherical area element
// 4 dx dy / (1 + |xi|^2)^2.
Vec3 steiner_point(const SupportField& f) {
  Vec3 s{0, 0, 0};
  double area = 0.0;
  for (Chart c : {Chart::North, Chart::South}) {
    const auto& g = f.grid(c);
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        Complex xi = g.xi(i, j);
        double w = chart_weight(std::abs(xi), g.radius);
        if (w == 0.0) continue;
        double q = std::norm(xi);
        double dA = w * 4.0 * g.h * g.h / ((1.0 + q) * (1.0 + q));
        Vec3 n = chart_normal(xi, c);
        double r = g.at(i, j);
        for (int k = 0; k < 3; ++k) s[k] += r * n[k] * dA;
        area += dA;
      }
  }
  // area should be ~4pi; normalize through it to absorb quadrature error.
  double scale = 3.0 / area;
  return {s[0] * scale, s[1] * scale, s[2] * scale};
}

void check_overlap(const SupportField& f) {
  double scale = std::max(std::abs(min_value(f.north)),
                          std::max(std::abs(max_value(f.north)), 1e-12));
  double h4 = std::pow(f.h(), 4);
  double tol = 10.0 * h4 * scale;
  double e1 = overlap_error(f.north, f.south);
  double e2 = overlap_error(f.south, f.north);
  if (std::max(e1, e2) >= tol)
    throw Error("support field charts disagree on the overlap: error " +
                std::to_string(std::max(e1, e2)) + " exceeds " +
                std::to_string(tol));
}

}  // namespace

SupportField make_support_field(const std::function<double(const Vec3&)>& r_of_n,
                                int n, double chart_radius) {
  if (n < 9) throw GridTooCoarse("support field needs n >= 9");
  SupportField f;
  f.north = ChartGrid<double>(Chart::North, n, chart_radius);
  f.south = ChartGrid<double>(Chart::South, n, chart_radius);
  sample_field(f, r_of_n);
  if (owned_min(f) <= 0.0) {
    Vec3 s = steiner_point(f);
    sample_field(f, [&](const Vec3& u) {
      return r_of_n(u) - (s[0] * u[0] + s[1] * u[1] + s[2] * u[2]);
    });
    if (owned_min(f) <= 0.0)
      throw NonConvex("support function not positive after re-centering");
  }
  check_overlap(f);
  return f;
}

SupportField make_support_field(ChartGrid<double> north,
                                ChartGrid<double> south, double time) {
  if (north.n != south.n || north.radius != south.radius)
    throw BadParams("chart grids must match");
  if (north.n < 9) throw GridTooCoarse("support field needs n >= 9");
  SupportField f;
  f.north = std::move(north);
  f.south = std::move(south);
  f.time = time;
  if (owned_min(f) <= 0.0)
    throw NonConvex("support function must be positive");
  check_overlap(f);
  return f;
}

void blend_overlap(ChartGrid<double>& a, ChartGrid<double>& b) {
  ChartGrid<double> na = a, nb = b;
  double lo = 1.0 / a.radius;
  for (int j = 0; j < a.n; ++j)
    for (int i = 0; i < a.n; ++i) {
      Complex xi = a.xi(i, j);
      double m = std::abs(xi);
      if (m <= lo) continue;
      Complex zeta = 1.0 / xi;
      double w = chart_weight(m, a.radius);
      na.at(i, j) = w * a.at(i, j) +
                    (1.0 - w) * interp_bicubic(b, zeta.real(), zeta.imag());
      nb.at(i, j) = w * b.at(i, j) +
                    (1.0 - w) * interp_bicubic(a, zeta.real(), zeta.imag());
    }
  a = std::move(na);
  b = std::move(nb);
}

void blend_overlap(SupportField& field) {
  blend_overlap(field.north, field.south);
}

double min_value(const ChartGrid<double>& g) {
  double m = g.values[0];
  for (double v : g.values) m = std::min(m, v);
  return m;
}

double max_value(const ChartGrid<double>& g) {
  double m = g.values[0];
  for (double v : g.values) m = std::max(m, v);
  return m;
}

FieldStats owned_stats(const ChartGrid<double>& north,
                       const ChartGrid<double>& south) {
  FieldStats st;
  bool first = true;
  for (const auto* g : {&north, &south}) {
    for (int j = 0; j < g->n; ++j)
      for (int i = 0; i < g->n; ++i) {
        if (std::abs(g->xi(i, j)) > 1.0 + 1e-12) continue;
        double v = g->at(i, j);
        if (first) {
          st.min = st.max = v;
          first = false;
        } else {
          st.min = std::min(st.min, v);
          st.max = std::max(st.max, v);
        }
      }
  }
  return st;
}

double owned_min(const SupportField& f) {
  return owned_stats(f.north, f.south).min;
}

template double interp_bicubic<double>(const ChartGrid<double>&, double, double);
template Complex interp_bicubic<Complex>(const ChartGrid<Complex>&, double,
                                         double);

}  // namespace rocflow
