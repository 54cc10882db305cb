#include "xpinn/elasticity/loads.hpp"

#include <algorithm>

namespace xpinn::elastic {

double penalty_of(const Dirichlet& d, const ElasticMaterial& m) { return d.penalty > 0.0 ? d.penalty : 10.0 * m.E; }

namespace {

bool overlaps(const geom::BoundarySegment& a, const geom::BoundarySegment& b, int dimension) {
  if (a.edge != b.edge) return false;
  if (dimension == 1) return true;
  return std::min(a.to, b.to) > std::max(a.from, b.from);
}

}  // namespace

std::vector<std::string> validate(const LoadSpec& loads, const geom::DomainSpec& spec) {
  std::vector<std::string> out;
  auto check_segment = [&](const geom::BoundarySegment& s, const std::string& name) {
    if (spec.dimension == 1 && s.edge != geom::Edge::left && s.edge != geom::Edge::right)
      out.push_back(name + ": 1D boundaries are left and right");
    if (!(s.to > s.from)) out.push_back(name + ": empty range");
  };
  for (std::size_t i = 0; i < loads.tractions.size(); ++i)
    check_segment(loads.tractions[i].segment, "traction " + std::to_string(i));
  for (std::size_t i = 0; i < loads.dirichlet.size(); ++i) {
    const auto& d = loads.dirichlet[i];
    const std::string name = "dirichlet " + std::to_string(i);
    check_segment(d.segment, name);
    if (d.penalty < 0.0) out.push_back(name + ": penalty must be non-negative");
    if (!d.components[0] && !d.components[1]) out.push_back(name + ": no component prescribed");
    for (std::size_t j = 0; j < loads.tractions.size(); ++j)
      if (overlaps(d.segment, loads.tractions[j].segment, spec.dimension))
        out.push_back(name + " overlaps traction " + std::to_string(j));
  }
  return out;
}

std::size_t PointSets::size() const {
  std::size_t n = domain.size();
  for (const auto& t : traction) n += t.size();
  for (const auto& d : dirichlet) n += d.size();
  return n;
}

PointSets make_point_sets(const geom::Domain& domain, const LoadSpec& loads, const quad::QuadratureConfig& cfg) {
  PointSets p;
  p.domain = quad::domain_points(domain, cfg);
  for (const auto& t : loads.tractions) p.traction.push_back(quad::boundary_points(domain, t.segment, cfg.boundary));
  for (const auto& d : loads.dirichlet) p.dirichlet.push_back(quad::boundary_points(domain, d.segment, cfg.boundary));
  return p;
}

}  // namespace xpinn::elastic
