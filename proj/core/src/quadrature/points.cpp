#include "segments.hpp"
#include "xpinn/quadrature/points.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>

namespace xpinn::quad {

std::string to_string(Method m) { return m == Method::ctm ? "ctm" : "udipm"; }

Method parse_method(const std::string& s) {
  if (s == "ctm") return Method::ctm;
  if (s == "udipm") return Method::udipm;
  throw ConfigError("unknown quadrature method '" + s + "' (expected ctm or udipm)");
}

std::vector<QuadraturePoint> domain_points(const geom::Domain& domain, const QuadratureConfig& cfg) {
  return cfg.method == Method::ctm ? ctm_points(domain, cfg.standard, cfg.enriched) : udipm_points(domain, cfg.udipm);
}

std::vector<QuadraturePoint> boundary_points(const geom::Domain& domain, const geom::BoundarySegment& seg,
                                             const BoundaryConfig& cfg) {
  using geom::Edge;
  const auto& s = domain.spec();
  const geom::Rect& b = s.bounds;
  std::vector<QuadraturePoint> out;
  if (domain.dimension() == 1) {
    if (seg.edge != Edge::left && seg.edge != Edge::right) throw ConfigError("1D boundaries are 'left' and 'right'");
    const Vec2 p{seg.edge == Edge::left ? b.xmin : b.xmax, 0.0};
    out.push_back({p, 1.0, domain.classify(p)});
    return out;
  }
  if (cfg.gauss_order < 1 || cfg.subintervals < 1) throw ConfigError("boundary gauss_order and subintervals must be >= 1");
  const bool vertical = seg.edge == Edge::left || seg.edge == Edge::right;
  const double fixed = seg.edge == Edge::left ? b.xmin : seg.edge == Edge::right ? b.xmax
                     : seg.edge == Edge::bottom ? b.ymin : b.ymax;
  const double lo = std::max(seg.from, vertical ? b.ymin : b.xmin);
  const double hi = std::min(seg.to, vertical ? b.ymax : b.xmax);
  if (!(hi > lo)) throw ConfigError("boundary segment on the " + geom::to_string(seg.edge) + " edge is empty");
  std::vector<Interval> holes;
  for (const auto& h : s.holes) {
    const double d = fixed - (vertical ? h.center.x() : h.center.y());
    if (std::abs(d) < h.radius) {
      const double half = std::sqrt(h.radius * h.radius - d * d);
      const double c = vertical ? h.center.y() : h.center.x();
      holes.push_back({c - half, c + half});
    }
  }
  for (const Interval& iv : subtract({lo, hi}, holes))
    composite_gauss(iv.a, iv.b, cfg.subintervals, cfg.gauss_order, [&](double t, double w) {
      const Vec2 p = vertical ? Vec2{fixed, t} : Vec2{t, fixed};
      geom::RegionTag tag = domain.classify(p);
      // A Gauss node exactly on a crack mouth: either face is a valid limit, take the positive one.
      if (tag.enriched() && tag.side == Side::none) tag.side = Side::positive;
      out.push_back({p, w, tag});
    });
  return out;
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

namespace {

template <class E>
[[noreturn]] void rethrow_indexed(const E& e, std::size_t i) {
  throw E("integration point " + std::to_string(i) + ": " + e.what());
}

}  // namespace

double integrate(std::span<const QuadraturePoint> points, const PointFunction& f) {
  std::vector<double> terms(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    try {
      terms[i] = points[i].weight * f(points[i]);
    } catch (const SideRequiredError& e) {
      rethrow_indexed(e, i);
    } catch (const DomainError& e) {
      rethrow_indexed(e, i);
    } catch (const NumericalError& e) {
      rethrow_indexed(e, i);
    } catch (const SingularError& e) {
      rethrow_indexed(e, i);
    } catch (const ConfigError& e) {
      rethrow_indexed(e, i);
    } catch (const Error& e) {
      rethrow_indexed(e, i);
    }
  }
  return pairwise_sum(terms);
}

double total_weight(std::span<const QuadraturePoint> points) {
  std::vector<double> w(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) w[i] = points[i].weight;
  return pairwise_sum(w);
}

void write_points_csv(std::ostream& out, std::span<const QuadraturePoint> points) {
  out << "x,y,weight,region,crack,side\n" << std::setprecision(17);
  for (const auto& p : points)
    out << p.position.x() << ',' << p.position.y() << ',' << p.weight << ','
        << (p.tag.enriched() ? "enriched" : "standard") << ',' << p.tag.crack << ','
        << static_cast<int>(sign_of(p.tag.side)) << '\n';
}

void write_points_csv(const std::string& path, std::span<const QuadraturePoint> points) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  write_points_csv(f, points);
}

}  // namespace xpinn::quad
