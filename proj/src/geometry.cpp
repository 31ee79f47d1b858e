#include "rocflow/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "rocflow/stencil.hpp"

namespace rocflow {

double tol_overlap(double h, double scale) { return 10.0 * std::pow(h, 4) * scale; }
double tol_im(double h, double psi_scale) { return 10.0 * std::pow(h, 4) * psi_scale; }
double sigma_min_threshold(double psi_scale) { return 1e-6 * psi_scale; }
double sigma_umb_threshold(double mean_psi) { return 0.02 * mean_psi; }

ChartGrid<double> RoCField::abs_sigma(Chart c) const {
  const auto& sg = sigma(c);
  ChartGrid<double> out(sg.chart_id, sg.n, sg.radius);
  for (size_t k = 0; k < sg.values.size(); ++k)
    out.values[k] = std::abs(sg.values[k]);
  return out;
}

namespace {

ChartGrid<Complex> chart_F(const ChartGrid<double>& r) {
  const int n = r.n;
  std::vector<double> rx = deriv_x(r.values, n, r.h);
  std::vector<double> ry = deriv_y(r.values, n, r.h);
  ChartGrid<Complex> F(r.chart_id, n, r.radius);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      double q = std::norm(r.xi(i, j));
      double f = 0.25 * (1.0 + q) * (1.0 + q);
      F.at(i, j) = f * Complex(rx[size_t(j) * n + i], ry[size_t(j) * n + i]);
    }
  return F;
}

struct ChartRoC {
  ChartGrid<double> psi;
  ChartGrid<Complex> sigma;
  double max_im = 0.0;
};

ChartRoC chart_roc(const ChartGrid<double>& r, const ChartGrid<Complex>& F) {
  const int n = r.n;
  // G = F / (1+q)^2; psi = r + (1+q)^2 * d G with d = (Dx - i Dy)/2.
  ChartGrid<Complex> G(r.chart_id, n, r.radius);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      double q = std::norm(r.xi(i, j));
      G.at(i, j) = F.at(i, j) / ((1.0 + q) * (1.0 + q));
    }
  std::vector<Complex> gx = deriv_x(G.values, n, r.h);
  std::vector<Complex> gy = deriv_y(G.values, n, r.h);
  std::vector<Complex> fx = deriv_x(F.values, n, r.h);
  std::vector<Complex> fy = deriv_y(F.values, n, r.h);

  ChartRoC out{ChartGrid<double>(r.chart_id, n, r.radius),
               ChartGrid<Complex>(r.chart_id, n, r.radius), 0.0};
  const Complex I(0.0, 1.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      size_t k = size_t(j) * n + i;
      Complex xi = r.xi(i, j);
      double q = std::norm(xi);
      double m2 = (1.0 + q) * (1.0 + q);
      Complex psi_c = r.at(i, j) + m2 * 0.5 * (gx[k] - I * gy[k]);
      Complex sigma = -0.5 * (std::conj(fx[k]) - I * std::conj(fy[k]));
      out.psi.at(i, j) = psi_c.real();
      out.sigma.at(i, j) = sigma;
      if (std::abs(xi) <= 1.0 + 1e-12)
        out.max_im = std::max(out.max_im, std::abs(psi_c.imag()));
    }
  return out;
}

}  // namespace

ComplexFieldPair compute_F(const SupportField& field) {
  if (field.n() < 9) throw GridTooCoarse("stencil does not fit, need n >= 9");
  return {chart_F(field.north), chart_F(field.south)};
}

RoCField compute_roc(const SupportField& field, bool allow_nonconvex) {
  ComplexFieldPair F = compute_F(field);
  ChartRoC nr = chart_roc(field.north, F.north);
  ChartRoC sr = chart_roc(field.south, F.south);

  RoCField roc;
  roc.psi_north = std::move(nr.psi);
  roc.psi_south = std::move(sr.psi);
  roc.sigma_north = std::move(nr.sigma);
  roc.sigma_south = std::move(sr.sigma);
  roc.max_im_psi = std::max(nr.max_im, sr.max_im);

  FieldStats psi_stats = owned_stats(roc.psi_north, roc.psi_south);
  double psi_scale = std::max(std::abs(psi_stats.min), std::abs(psi_stats.max));
  if (roc.max_im_psi >= tol_im(field.h(), std::max(psi_scale, 1e-12)))
    throw NonRealPsi("max |Im psi| = " + std::to_string(roc.max_im_psi));

  bool first = true;
  for (Chart c : {Chart::North, Chart::South}) {
    const auto& psi = roc.psi(c);
    const auto& sigma = roc.sigma(c);
    for (int j = 0; j < psi.n; ++j)
      for (int i = 0; i < psi.n; ++i) {
        if (std::abs(psi.xi(i, j)) > 1.0 + 1e-12) continue;
        double m = psi.at(i, j) - std::abs(sigma.at(i, j));
        if (first || m < roc.convexity_margin) roc.convexity_margin = m;
        first = false;
      }
  }
  roc.convex = roc.convexity_margin > 0.0;
  if (!roc.convex && !allow_nonconvex)
    throw NonConvex("psi - |sigma| reaches " +
                    std::to_string(roc.convexity_margin));
  return roc;
}

namespace {

void reconstruct_chart(const ChartGrid<double>& r, const ChartGrid<Complex>& F,
                       SurfaceMesh& mesh) {
  const int n = r.n;
  const bool south = r.chart_id == Chart::South;
  const double cut = 1.0 + r.h;
  std::vector<int> index(size_t(n) * n, -1);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      Complex xi = r.xi(i, j);
      if (std::abs(xi) > cut) continue;
      double q = std::norm(xi);
      double m2 = (1.0 + q) * (1.0 + q);
      Complex f = F.at(i, j);
      double rv = r.at(i, j);
      Complex w = (2.0 * (f - std::conj(f) * xi * xi) +
                   2.0 * xi * (1.0 + q) * rv) / m2;
      double x3 = (-4.0 * (f * std::conj(xi)).real() + (1.0 - q * q) * rv) / m2;
      Vec3 p{w.real(), w.imag(), x3};
      Vec3 nrm = chart_normal(xi, r.chart_id);
      if (south) {
        p = {p[0], -p[1], -p[2]};
      }
      index[size_t(j) * n + i] = int(mesh.vertices.size());
      mesh.vertices.push_back(p);
      mesh.normals.push_back(nrm);
      mesh.support.push_back(rv);
    }
  for (int j = 0; j + 1 < n; ++j)
    for (int i = 0; i + 1 < n; ++i) {
      int a = index[size_t(j) * n + i];
      int b = index[size_t(j) * n + i + 1];
      int c = index[size_t(j + 1) * n + i + 1];
      int d = index[size_t(j + 1) * n + i];
      if (a < 0 || b < 0 || c < 0 || d < 0) continue;
      // keep only cells whose center this chart owns, so the two chart
      // meshes tile the sphere with at most a node-scale seam
      Complex center = r.xi(i, j) + Complex(0.5 * r.h, 0.5 * r.h);
      if (std::abs(center) > 1.0) continue;
      if (south)
        mesh.quads.push_back({a, d, c, b});
      else
        mesh.quads.push_back({a, b, c, d});
    }
}

}  // namespace

SurfaceMesh reconstruct_surface(const SupportField& field) {
  ComplexFieldPair F = compute_F(field);
  SurfaceMesh mesh;
  reconstruct_chart(field.north, F.north, mesh);
  reconstruct_chart(field.south, F.south, mesh);
  return mesh;
}

namespace {

ChartGrid<double> chart_codazzi(const ChartGrid<double>& psi,
                                const ChartGrid<Complex>& sigma) {
  const int n = psi.n;
  std::vector<double> px = deriv_x(psi.values, n, psi.h);
  std::vector<double> py = deriv_y(psi.values, n, psi.h);
  ChartGrid<Complex> T(psi.chart_id, n, psi.radius);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      double q = std::norm(psi.xi(i, j));
      T.at(i, j) = sigma.at(i, j) / ((1.0 + q) * (1.0 + q));
    }
  std::vector<Complex> tx = deriv_x(T.values, n, psi.h);
  std::vector<Complex> ty = deriv_y(T.values, n, psi.h);
  ChartGrid<double> res(psi.chart_id, n, psi.radius);
  const Complex I(0.0, 1.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      size_t k = size_t(j) * n + i;
      double q = std::norm(psi.xi(i, j));
      double m2 = (1.0 + q) * (1.0 + q);
      Complex dpsi = 0.5 * Complex(px[k], -py[k]);
      Complex dbarT = 0.5 * (tx[k] + I * ty[k]);
      res.at(i, j) = std::abs(dpsi + m2 * dbarT);
    }
  return res;
}

}  // namespace

RealFieldPair codazzi_residual(const RoCField& roc) {
  return {chart_codazzi(roc.psi_north, roc.sigma_north),
          chart_codazzi(roc.psi_south, roc.sigma_south)};
}

RealFieldPair codazzi_residual(const SupportField& field) {
  return codazzi_residual(compute_roc(field, true));
}

double owned_max(const RealFieldPair& f) {
  double m = 0.0;
  for (const auto* g : {&f.north, &f.south})
    for (int j = 0; j < g->n; ++j)
      for (int i = 0; i < g->n; ++i)
        if (std::abs(g->xi(i, j)) <= 1.0 + 1e-12)
          m = std::max(m, g->at(i, j));
  return m;
}

HyperbolicArea hyperbolic_roc_area(const RoCField& roc) {
  FieldStats psi_stats = owned_stats(roc.psi_north, roc.psi_south);
  double smin = sigma_min_threshold(
      std::max(std::abs(psi_stats.min), std::abs(psi_stats.max)));
  HyperbolicArea out;
  for (Chart c : {Chart::North, Chart::South}) {
    const auto& psi = roc.psi(c);
    ChartGrid<double> s = roc.abs_sigma(c);
    const int n = psi.n;
    std::vector<double> px = deriv_x(psi.values, n, psi.h);
    std::vector<double> py = deriv_y(psi.values, n, psi.h);
    std::vector<double> sx = deriv_x(s.values, n, s.h);
    std::vector<double> sy = deriv_y(s.values, n, s.h);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        Complex xi = psi.xi(i, j);
        double w = chart_weight(std::abs(xi), psi.radius);
        if (w == 0.0) continue;
        size_t k = size_t(j) * n + i;
        double sv = s.at(i, j);
        if (sv <= smin) {
          double q = std::norm(xi);
          out.excluded_area += w * 4.0 * psi.h * psi.h / ((1.0 + q) * (1.0 + q));
          continue;
        }
        double jac = px[k] * sy[k] - py[k] * sx[k];
        out.value += w * jac / (sv * sv) * psi.h * psi.h;
      }
  }
  return out;
}

double mean_owned_psi(const RoCField& roc) {
  double sum = 0.0;
  int count = 0;
  for (Chart c : {Chart::North, Chart::South}) {
    const auto& psi = roc.psi(c);
    for (int j = 0; j < psi.n; ++j)
      for (int i = 0; i < psi.n; ++i)
        if (std::abs(psi.xi(i, j)) <= 1.0 + 1e-12) {
          sum += psi.at(i, j);
          ++count;
        }
  }
  return sum / count;
}

UmbilicSlopeReport umbilic_kappa(const RoCField& roc, const GridNode& seed,
                                 int directions) {
  directions = std::max(directions, 16);
  const auto& psi = roc.psi(seed.chart);
  ChartGrid<double> s = roc.abs_sigma(seed.chart);
  double sigma_umb = sigma_umb_threshold(mean_owned_psi(roc));
  double s0 = s.at(seed.i, seed.j);
  if (s0 >= sigma_umb)
    throw NotUmbilic("|sigma| at the seed node is " + std::to_string(s0));

  Complex xi0 = psi.xi(seed.i, seed.j);
  double psi0 = psi.at(seed.i, seed.j);
  double floor = 1e-10 * std::max(1.0, std::abs(psi0));
  const double radii[3] = {4.0 * psi.h, 6.0 * psi.h, 8.0 * psi.h};

  UmbilicSlopeReport rep;
  int degenerate = 0, total = 0;
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (int d = 0; d < directions; ++d) {
    double th = 2.0 * M_PI * d / directions;
    for (double rad : radii) {
      Complex p = xi0 + rad * Complex(std::cos(th), std::sin(th));
      if (std::max(std::abs(p.real()), std::abs(p.imag())) > psi.radius)
        continue;
      double sp = interp_bicubic(s, p.real(), p.imag());
      ++total;
      if (sp <= floor) {
        ++degenerate;
        continue;
      }
      double slope = (interp_bicubic(psi, p.real(), p.imag()) - psi0) / sp;
      rep.samples.push_back(slope);
      if (first || slope < lo) lo = slope;
      if (first || slope > hi) hi = slope;
      first = false;
    }
  }
  rep.indeterminate = degenerate > total / 2;
  rep.spread = first ? 0.0 : hi - lo;
  return rep;
}

}  // namespace rocflow
