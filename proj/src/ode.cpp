#include "rocflow/ode.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>

namespace rocflow {

std::array<double, 2> ode_rhs(const RoCPoint& p, const FlowSpec& flow) {
  FlowJet j = flow.jet(p.psi, p.s);
  return {-j.K - p.s * j.K01, p.s * j.K10};
}

double conserved_I(const RoCPoint& p, const FlowSpec& flow) {
  return p.s * flow.jet(p.psi, p.s).K;
}

OdePath integrate_ode(const RoCPoint& p0, const FlowSpec& flow, double t_span,
                      double dt) {
  if (!(t_span > 0.0) || !(dt > 0.0))
    throw BadParams("t_span and dt must be positive");
  OdePath path;
  double i0 = conserved_I(p0, flow);  // throws OutOfDomain if p0 invalid
  path.t.push_back(0.0);
  path.points.push_back(p0);

  double t = 0.0;
  RoCPoint p = p0;
  while (t < t_span - 1e-15) {
    double step = std::min(dt, t_span - t);
    try {
      auto k1 = ode_rhs(p, flow);
      RoCPoint p2{p.psi + 0.5 * step * k1[0], p.s + 0.5 * step * k1[1]};
      auto k2 = ode_rhs(p2, flow);
      RoCPoint p3{p.psi + 0.5 * step * k2[0], p.s + 0.5 * step * k2[1]};
      auto k3 = ode_rhs(p3, flow);
      RoCPoint p4{p.psi + step * k3[0], p.s + step * k3[1]};
      auto k4 = ode_rhs(p4, flow);
      RoCPoint next{
          p.psi + step / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
          p.s + step / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])};
      double inext = conserved_I(next, flow);
      p = next;
      t += step;
      path.t.push_back(t);
      path.points.push_back(p);
      path.i_drift = std::max(path.i_drift, std::abs(inext - i0));
    } catch (const OutOfDomain&) {
      path.cone_exit = true;
      break;
    } catch (const EvalDomain&) {
      path.cone_exit = true;
      break;
    }
  }
  return path;
}

double poisson_bracket(const FlowJet& h, const FlowJet& k) {
  return h.K10 * k.K01 - h.K01 * k.K10;
}

CertificateSample certificate_at(const FlowSpec& hspec, const FlowSpec& kspec,
                                 double psi, double s) {
  FlowJet h = hspec.jet(psi, s);
  FlowJet k = kspec.jet(psi, s);
  CertificateSample out;
  out.psi = psi;
  out.s = s;
  double hk = poisson_bracket(h, k);
  double hess_k = k.K20 * h.K01 * h.K01 - 2.0 * k.K11 * h.K01 * h.K10 +
                  k.K02 * h.K10 * h.K10;
  double hess_h = h.K20 * h.K01 * h.K01 - 2.0 * h.K11 * h.K01 * h.K10 +
                  h.K02 * h.K10 * h.K10;
  out.HK = hk;
  out.A = (h.K10 * h.K10 + h.K01 * h.K01) * hk -
          s * (k.K10 * hess_h - h.K10 * hess_k);
  out.B = -2.0 * h.K10 * h.K01 * hk + s * (k.K01 * hess_h - h.K01 * hess_k);
  out.HI = h.K10 * k.K + s * hk;
  double scale = std::abs(h.K10) + std::abs(h.K01) + 1.0;
  out.h10_zero = std::abs(h.K10) < 1e-13 * scale;
  return out;
}

CertificateReport certificate_check(const FlowSpec& hspec,
                                    const FlowSpec& kspec,
                                    const ConeRect& region, int samples) {
  if (samples < 2) throw BadParams("need at least 2 samples per axis");
  CertificateReport rep;
  rep.region = region;
  double worst_a = std::numeric_limits<double>::infinity();
  double worst_b = worst_a;
  bool first = true;
  for (int j = 0; j < samples; ++j)
    for (int i = 0; i < samples; ++i) {
      double psi = region.psi_min +
                   (region.psi_max - region.psi_min) * i / (samples - 1);
      double s =
          region.s_min + (region.s_max - region.s_min) * j / (samples - 1);
      s = std::min(s, 0.999 * psi);
      if (!(psi > s && s >= 0.0)) continue;
      CertificateSample c = certificate_at(hspec, kspec, psi, s);
      rep.samples.push_back(c);
      if (c.h10_zero) ++rep.h10_zero_count;
      double a_ab = c.A - std::abs(c.B);
      double b_ab = -c.A - std::abs(c.B);
      if (first) {
        rep.worst_a_ab = a_ab;
        rep.worst_a_hi = c.HI;
        rep.worst_b_ab = b_ab;
        rep.worst_b_hi = -c.HI;
        rep.worst_a_psi = rep.worst_b_psi = psi;
        rep.worst_a_s = rep.worst_b_s = s;
        worst_a = std::min(a_ab, c.HI);
        worst_b = std::min(b_ab, -c.HI);
        first = false;
        continue;
      }
      rep.worst_a_ab = std::min(rep.worst_a_ab, a_ab);
      rep.worst_a_hi = std::min(rep.worst_a_hi, c.HI);
      rep.worst_b_ab = std::min(rep.worst_b_ab, b_ab);
      rep.worst_b_hi = std::min(rep.worst_b_hi, -c.HI);
      if (std::min(a_ab, c.HI) < worst_a) {
        worst_a = std::min(a_ab, c.HI);
        rep.worst_a_psi = psi;
        rep.worst_a_s = s;
      }
      if (std::min(b_ab, -c.HI) < worst_b) {
        worst_b = std::min(b_ab, -c.HI);
        rep.worst_b_psi = psi;
        rep.worst_b_s = s;
      }
    }
  return rep;
}

namespace {

// Marching squares over the sampled I lattice. Edges are keyed by their
// lower-left node and orientation so segment endpoints can be matched up.
struct EdgeKey {
  int i, j, horiz;
  bool operator<(const EdgeKey& o) const {
    if (i != o.i) return i < o.i;
    if (j != o.j) return j < o.j;
    return horiz < o.horiz;
  }
};

struct Segment {
  EdgeKey a, b;
};

double lerp_t(double va, double vb, double level) {
  double d = vb - va;
  if (d == 0.0) return 0.5;
  return std::clamp((level - va) / d, 0.0, 1.0);
}

}  // namespace

FlowlineSet flowlines_at(const FlowSpec& flow, const ConeRect& region,
                         const std::vector<double>& levels, int samples) {
  if (samples < 4) throw BadParams("need at least 4 samples per axis");
  if (!(region.psi_max > region.psi_min) || !(region.s_max > region.s_min) ||
      region.s_min < 0.0 || !(region.psi_min > region.s_min))
    throw BadParams("flowline region must be a rectangle meeting the cone");

  const int n = samples;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> psi_of(n), s_of(n);
  for (int i = 0; i < n; ++i)
    psi_of[i] = region.psi_min + (region.psi_max - region.psi_min) * i / (n - 1);
  for (int j = 0; j < n; ++j)
    s_of[j] = region.s_min + (region.s_max - region.s_min) * j / (n - 1);

  std::vector<double> val(size_t(n) * n, nan);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (!(psi_of[i] > s_of[j])) continue;
      val[size_t(j) * n + i] = s_of[j] * flow.jet(psi_of[i], s_of[j]).K;
    }

  FlowlineSet out;
  out.levels = levels;

  for (double level : levels) {
    // collect crossing points per edge and cell segments
    std::map<EdgeKey, std::array<double, 2>> cross;
    std::vector<Segment> segs;
    auto corner = [&](int i, int j) { return val[size_t(j) * n + i]; };
    for (int j = 0; j + 1 < n; ++j)
      for (int i = 0; i + 1 < n; ++i) {
        double v00 = corner(i, j), v10 = corner(i + 1, j);
        double v01 = corner(i, j + 1), v11 = corner(i + 1, j + 1);
        if (std::isnan(v00) || std::isnan(v10) || std::isnan(v01) ||
            std::isnan(v11))
          continue;
        int code = (v00 > level) | ((v10 > level) << 1) | ((v11 > level) << 2) |
                   ((v01 > level) << 3);
        if (code == 0 || code == 15) continue;
        auto edge_point = [&](EdgeKey e) {
          if (e.horiz) {
            double t = lerp_t(corner(e.i, e.j), corner(e.i + 1, e.j), level);
            cross[e] = {psi_of[e.i] + t * (psi_of[e.i + 1] - psi_of[e.i]),
                        s_of[e.j]};
          } else {
            double t = lerp_t(corner(e.i, e.j), corner(e.i, e.j + 1), level);
            cross[e] = {psi_of[e.i], s_of[e.j] + t * (s_of[e.j + 1] - s_of[e.j])};
          }
        };
        EdgeKey bottom{i, j, 1}, top{i, j + 1, 1}, left{i, j, 0},
            right{i + 1, j, 0};
        auto emit = [&](EdgeKey a, EdgeKey b) {
          edge_point(a);
          edge_point(b);
          segs.push_back({a, b});
        };
        switch (code) {
          case 1: case 14: emit(left, bottom); break;
          case 2: case 13: emit(bottom, right); break;
          case 3: case 12: emit(left, right); break;
          case 4: case 11: emit(right, top); break;
          case 6: case 9: emit(bottom, top); break;
          case 7: case 8: emit(left, top); break;
          case 5: case 10: {
            // saddle: split by the cell-center value
            double center = 0.25 * (v00 + v10 + v01 + v11);
            bool center_hi = center > level;
            if ((code == 5) == center_hi) {
              emit(left, top);
              emit(bottom, right);
            } else {
              emit(left, bottom);
              emit(right, top);
            }
            break;
          }
        }
      }

    // stitch segments into polylines
    std::map<EdgeKey, std::vector<int>> adj;
    for (int si = 0; si < int(segs.size()); ++si) {
      adj[segs[si].a].push_back(si);
      adj[segs[si].b].push_back(si);
    }
    std::vector<char> used(segs.size(), 0);
    auto same = [](const EdgeKey& a, const EdgeKey& b) {
      return a.i == b.i && a.j == b.j && a.horiz == b.horiz;
    };
    auto walk = [&](EdgeKey start) {
      std::vector<EdgeKey> chain{start};
      EdgeKey cur = start;
      while (true) {
        int next = -1;
        for (int si : adj[cur])
          if (!used[si]) { next = si; break; }
        if (next < 0) break;
        used[next] = 1;
        cur = same(segs[next].a, cur) ? segs[next].b : segs[next].a;
        chain.push_back(cur);
      }
      return chain;
    };
    auto flush_chain = [&](const std::vector<EdgeKey>& chain) {
      if (chain.size() < 2) return;
      Polyline pl;
      pl.level = level;
      for (const auto& e : chain) pl.points.push_back(cross[e]);
      // orient along the ODE direction
      size_t mid = pl.points.size() / 2;
      size_t m2 = std::min(mid + 1, pl.points.size() - 1);
      double tx = pl.points[m2][0] - pl.points[mid > 0 ? mid - 1 : 0][0];
      double ty = pl.points[m2][1] - pl.points[mid > 0 ? mid - 1 : 0][1];
      RoCPoint p{pl.points[mid][0], pl.points[mid][1]};
      if (p.psi > p.s && p.s >= 0.0) {
        auto v = ode_rhs(p, flow);
        if (v[0] * tx + v[1] * ty < 0.0)
          std::reverse(pl.points.begin(), pl.points.end());
      }
      out.lines.push_back(std::move(pl));
    };
    // open chains first (endpoints of odd degree), then leftover loops
    for (const auto& [key, ids] : adj) {
      int free_count = 0;
      for (int si : ids) if (!used[si]) ++free_count;
      if (free_count == 1) flush_chain(walk(key));
    }
    for (int si = 0; si < int(segs.size()); ++si)
      if (!used[si]) flush_chain(walk(segs[si].a));
  }

  // the degenerate I = 0 component along the boundary s = 0
  if (region.s_min <= 0.0) {
    Polyline pl;
    pl.level = 0.0;
    pl.degenerate = true;
    for (int i = 0; i < n; ++i) pl.points.push_back({psi_of[i], 0.0});
    RoCPoint p{0.5 * (region.psi_min + region.psi_max), 0.0};
    auto v = ode_rhs(p, flow);
    if (v[0] < 0.0) std::reverse(pl.points.begin(), pl.points.end());
    out.lines.push_back(std::move(pl));
  }
  return out;
}

FlowlineSet flowlines(const FlowSpec& flow, const ConeRect& region, int levels,
                      int samples) {
  if (levels < 1) throw BadParams("need at least one level");
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int j = 0; j < samples; ++j)
    for (int i = 0; i < samples; ++i) {
      double psi = region.psi_min +
                   (region.psi_max - region.psi_min) * i / (samples - 1);
      double s =
          region.s_min + (region.s_max - region.s_min) * j / (samples - 1);
      if (!(psi > s)) continue;
      double v = s * flow.jet(psi, s).K;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  std::vector<double> lv;
  for (int k = 0; k < levels; ++k)
    lv.push_back(lo + (hi - lo) * (k + 0.5) / levels);
  return flowlines_at(flow, region, lv, samples);
}

}  // namespace rocflow
