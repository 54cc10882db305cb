#include "xpinn/quadrature/gauss_legendre.hpp"
#include "xpinn/quadrature/points.hpp"
#include "segments.hpp"

#include <algorithm>
#include <cmath>

namespace xpinn::quad {

namespace {

using geom::RegionTag;

std::vector<std::pair<double, double>> outer_levels(double lo, double hi, std::vector<double> crit, int n_rays,
                                                    int m) {
  const int total = std::max(1, static_cast<int>(std::lround(static_cast<double>(n_rays) / m)));
  crit.push_back(lo);
  crit.push_back(hi);
  const double span = hi - lo;
  std::vector<double> cuts;
  for (double c : crit)
    if (c >= lo && c <= hi) cuts.push_back(c);
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> merged;
  for (double c : cuts)
    if (merged.empty() || c - merged.back() > 1e-12 * span) merged.push_back(c);
  merged.back() = hi;
  std::vector<std::pair<double, double>> levels;
  for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
    const double a = merged[i], b = merged[i + 1];
    const int k = std::max(1, static_cast<int>(std::lround(total * (b - a) / span)));
    composite_gauss(a, b, k, m, [&levels](double y, double w) { levels.emplace_back(y, w); });
  }
  return levels;
}

// Chord of the horizontal line at y through a convex quadrilateral.
std::optional<Interval> quad_chord(const std::array<Vec2, 4>& q, double y) {
  double lo = INFINITY, hi = -INFINITY;
  for (int i = 0; i < 4; ++i) {
    const Vec2& p = q[i];
    const Vec2& r = q[(i + 1) % 4];
    if (p.y() == r.y()) {
      if (p.y() == y) {
        lo = std::min({lo, p.x(), r.x()});
        hi = std::max({hi, p.x(), r.x()});
      }
      continue;
    }
    if ((p.y() - y) * (r.y() - y) <= 0.0) {
      const double t = (y - p.y()) / (r.y() - p.y());
      const double x = p.x() + t * (r.x() - p.x());
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  }
  if (!(hi > lo)) return std::nullopt;
  return Interval{lo, hi};
}

// Moves a ray level off circle tangencies.
double untangle(double level, const std::vector<std::pair<double, double>>& circles, double height) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    bool tangent = false;
    for (const auto& [c, r] : circles)
      if (std::abs(std::abs(level - c) - r) <= 1e-12 * height) tangent = true;
    if (!tangent) return level;
    level += 1e-9 * height;
  }
  return level;
}

void standard_2d(const geom::Domain& domain, const CtmConfig& cfg, std::vector<QuadraturePoint>& out) {
  const auto& s = domain.spec();
  const geom::Rect& b = s.bounds;
  std::vector<double> crit;
  std::vector<std::pair<double, double>> circles;
  for (const auto& h : s.holes) {
    crit.push_back(h.center.y() - h.radius);
    crit.push_back(h.center.y() + h.radius);
    circles.emplace_back(h.center.y(), h.radius);
  }
  std::vector<std::array<Vec2, 4>> rects;
  for (const auto& c : s.cracks) {
    rects.push_back(geom::enrichment_rectangle(c));
    for (const Vec2& p : rects.back()) crit.push_back(p.y());
  }
  const auto levels = outer_levels(b.ymin, b.ymax, crit, cfg.n_rays, cfg.gauss_order);
  std::vector<Interval> excluded;
  for (auto [y, wy] : levels) {
    y = untangle(y, circles, b.height());
    excluded.clear();
    for (const auto& h : s.holes) {
      const double dy = y - h.center.y();
      if (std::abs(dy) < h.radius) {
        const double dx = std::sqrt(h.radius * h.radius - dy * dy);
        excluded.push_back({h.center.x() - dx, h.center.x() + dx});
      }
    }
    for (const auto& q : rects)
      if (auto chord = quad_chord(q, y)) excluded.push_back(*chord);
    for (const Interval& iv : subtract({b.xmin, b.xmax}, excluded))
      composite_gauss(iv.a, iv.b, cfg.subintervals, cfg.gauss_order,
                      [&](double x, double wx) { out.push_back({{x, y}, wy * wx, RegionTag{}}); });
  }
}

// Parameter range of t for which a + t d stays in [lo, hi].
bool clip_axis(double a, double d, double lo, double hi, double& t0, double& t1) {
  if (std::abs(d) < 1e-300) return a >= lo && a <= hi;
  double ta = (lo - a) / d, tb = (hi - a) / d;
  if (ta > tb) std::swap(ta, tb);
  t0 = std::max(t0, ta);
  t1 = std::min(t1, tb);
  return t1 > t0;
}

void enriched_2d(const geom::Domain& domain, std::size_t ci, Side side, const CtmConfig& cfg,
                 std::vector<QuadraturePoint>& out) {
  const auto& s = domain.spec();
  const auto& f = domain.frames()[ci];
  const geom::Rect& b = s.bounds;
  const double lo = side == Side::positive ? f.eta1() : f.eta1() - f.l0();
  const double hi = side == Side::positive ? f.eta1() + f.l0() : f.eta1();
  std::vector<double> crit;
  std::vector<std::pair<double, double>> circles;
  for (const Vec2& corner : {Vec2{b.xmin, b.ymin}, Vec2{b.xmax, b.ymin}, Vec2{b.xmax, b.ymax}, Vec2{b.xmin, b.ymax}})
    crit.push_back(f.to_local(corner).y());
  std::vector<Vec2> hole_local;
  for (const auto& h : s.holes) {
    const Vec2 c = f.to_local(h.center);
    hole_local.push_back(c);
    crit.push_back(c.y() - h.radius);
    crit.push_back(c.y() + h.radius);
    circles.emplace_back(c.y(), h.radius);
  }
  const auto levels = outer_levels(lo, hi, crit, cfg.n_rays, cfg.gauss_order);
  const RegionTag tag{RegionTag::Kind::enriched, static_cast<int>(ci), side};
  std::vector<Interval> excluded;
  for (auto [eta, weta] : levels) {
    eta = untangle(eta, circles, b.height());
    // Global point of local (t, eta): t (c, s) + eta (-s, c).
    double t0 = f.xi1(), t1 = f.xi2();
    const double c = f.cos_theta(), sn = f.sin_theta();
    if (!clip_axis(-eta * sn, c, b.xmin, b.xmax, t0, t1)) continue;
    if (!clip_axis(eta * c, sn, b.ymin, b.ymax, t0, t1)) continue;
    excluded.clear();
    for (std::size_t h = 0; h < s.holes.size(); ++h) {
      const double r = s.holes[h].radius;
      const double dy = eta - hole_local[h].y();
      if (std::abs(dy) < r) {
        const double dx = std::sqrt(r * r - dy * dy);
        excluded.push_back({hole_local[h].x() - dx, hole_local[h].x() + dx});
      }
    }
    for (const Interval& iv : subtract({t0, t1}, excluded))
      composite_gauss(iv.a, iv.b, cfg.subintervals, cfg.gauss_order, [&](double xi, double wxi) {
        out.push_back({f.to_global({xi, eta}), weta * wxi, tag});
      });
  }
}

void check(const CtmConfig& cfg) {
  if (cfg.n_rays < 1 || cfg.gauss_order < 1 || cfg.subintervals < 1)
    throw ConfigError("CTM n_rays, gauss_order and subintervals must all be >= 1");
}

}  // namespace

std::vector<double> bar_breakpoints(const geom::DomainSpec& s) {
  std::vector<double> cuts{s.bounds.xmin, s.bounds.xmax};
  for (const auto& c : s.bar_cracks) {
    cuts.push_back(c.x0 - c.l0);
    cuts.push_back(c.x0);
    cuts.push_back(c.x0 + c.l0);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

std::vector<QuadraturePoint> ctm_points(const geom::Domain& domain, const CtmConfig& standard,
                                        const CtmConfig& enriched) {
  check(standard);
  std::vector<QuadraturePoint> out;
  if (domain.dimension() == 1) {
    const auto cuts = bar_breakpoints(domain.spec());
    const double length = domain.spec().bounds.width();
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const int k = std::max(1, static_cast<int>(std::lround(standard.subintervals * (cuts[i + 1] - cuts[i]) / length)));
      composite_gauss(cuts[i], cuts[i + 1], k, standard.gauss_order, [&](double x, double w) {
        const Vec2 p{x, 0.0};
        out.push_back({p, w, domain.classify(p)});
      });
    }
    return out;
  }
  check(enriched);
  standard_2d(domain, standard, out);
  for (std::size_t i = 0; i < domain.frames().size(); ++i) {
    enriched_2d(domain, i, Side::negative, enriched, out);
    enriched_2d(domain, i, Side::positive, enriched, out);
  }
  return out;
}

std::vector<QuadraturePoint> ctm_points(const geom::Domain& domain, const CtmConfig& cfg) {
  return ctm_points(domain, cfg, cfg);
}

}  // namespace xpinn::quad
