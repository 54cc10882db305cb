#include "segments.hpp"
#include "xpinn/quadrature/points.hpp"

#include <cmath>

namespace xpinn::quad {

namespace {

using geom::RegionTag;

// nx * ny close to n with cells as square as the aspect ratio allows.
std::pair<int, int> grid_shape(int n, double w, double h) {
  const int nx = std::max(1, static_cast<int>(std::lround(std::sqrt(n * w / h))));
  const int ny = std::max(1, static_cast<int>(std::lround(static_cast<double>(n) / nx)));
  return {nx, ny};
}

}  // namespace

std::vector<QuadraturePoint> udipm_points(double a, double b, int n) {
  if (n <= 0) throw ConfigError("UDIPM point count must be positive");
  std::vector<QuadraturePoint> out;
  out.reserve(static_cast<std::size_t>(n));
  const double h = (b - a) / n;
  for (int i = 0; i < n; ++i) out.push_back({{a + (i + 0.5) * h, 0.0}, h, RegionTag{}});
  return out;
}

std::vector<QuadraturePoint> udipm_points(const geom::Domain& domain, const UdipmConfig& cfg) {
  if (cfg.standard_points <= 0 || (domain.dimension() == 2 && cfg.enriched_points <= 0 && domain.crack_count() > 0))
    throw ConfigError("UDIPM point counts must be positive");
  const auto& s = domain.spec();
  std::vector<QuadraturePoint> out;
  if (domain.dimension() == 1) {
    // Per partition so no point lands on x0 and each side is sampled on its own.
    const auto cuts = bar_breakpoints(s);
    const double length = s.bounds.width();
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const int k = std::max(1, static_cast<int>(std::lround(cfg.standard_points * (cuts[i + 1] - cuts[i]) / length)));
      for (auto p : udipm_points(cuts[i], cuts[i + 1], k)) {
        p.tag = domain.classify(p.position);
        out.push_back(p);
      }
    }
    return out;
  }
  const geom::Rect& b = s.bounds;
  const auto [nx, ny] = grid_shape(cfg.standard_points, b.width(), b.height());
  const double hx = b.width() / nx, hy = b.height() / ny;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const Vec2 p{b.xmin + (i + 0.5) * hx, b.ymin + (j + 0.5) * hy};
      if (!domain.inside_material(p)) continue;
      if (domain.classify(p).enriched()) continue;
      out.push_back({p, hx * hy, RegionTag{}});
    }
  for (std::size_t c = 0; c < domain.frames().size(); ++c) {
    const auto& f = domain.frames()[c];
    const auto [nxi, neta] = grid_shape(cfg.enriched_points, f.length(), f.l0());
    const double hxi = f.length() / nxi, heta = f.l0() / neta;
    for (Side side : {Side::negative, Side::positive}) {
      const double lo = side == Side::positive ? f.eta1() : f.eta1() - f.l0();
      const RegionTag tag{RegionTag::Kind::enriched, static_cast<int>(c), side};
      for (int j = 0; j < neta; ++j)
        for (int i = 0; i < nxi; ++i) {
          const Vec2 p = f.to_global({f.xi1() + (i + 0.5) * hxi, lo + (j + 0.5) * heta});
          if (!domain.inside_material(p)) continue;
          out.push_back({p, hxi * heta, tag});
        }
    }
  }
  return out;
}

}  // namespace xpinn::quad
