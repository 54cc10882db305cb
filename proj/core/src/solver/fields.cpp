#include "xpinn/solver/fields.hpp"

#include <iomanip>
#include <ostream>

namespace xpinn::solver {

FieldTable evaluate_fields(const XpinnModel& model, const elastic::ElasticMaterial& mat, int nx, int ny) {
  const auto& spec = model.domain().spec();
  FieldTable t;
  t.dimension = model.dimension();
  t.nx = nx;
  t.ny = t.dimension == 1 ? 1 : ny;
  if (t.nx < 2 || (t.dimension == 2 && t.ny < 2)) throw ConfigError("field grid needs at least 2 nodes per axis");
  const auto& b = spec.bounds;
  t.origin = {b.xmin, t.dimension == 1 ? 0.0 : b.ymin};
  t.spacing = {b.width() / (t.nx - 1), t.dimension == 1 ? 1.0 : b.height() / (t.ny - 1)};
  t.rows.reserve(static_cast<std::size_t>(t.nx) * static_cast<std::size_t>(t.ny));
  for (int j = 0; j < t.ny; ++j)
    for (int i = 0; i < t.nx; ++i) {
      FieldRow r;
      r.position = {i + 1 == t.nx ? b.xmax : t.origin.x() + i * t.spacing.x(),
                    t.dimension == 1 ? 0.0 : (j + 1 == t.ny ? b.ymax : t.origin.y() + j * t.spacing.y())};
      r.present = model.domain().inside_material(r.position);
      if (r.present) {
        r.tag = model.domain().classify(r.position);
        if (r.tag.enriched() && r.tag.side == Side::none) r.tag.side = Side::positive;
        const DisplacementSample s = displacement(model, r.position, r.tag);
        const auto st = elastic::stress_state(s.jacobian, mat);
        r.u = s.u;
        r.strain = st.epsilon;
        r.stress = st.sigma;
        r.von_mises = elastic::von_mises(st.sigma, mat);
      }
      t.rows.push_back(r);
    }
  return t;
}

Vec2 crack_jump(const XpinnModel& model, int crack, double xi) {
  Vec2 p;
  if (model.dimension() == 1) {
    p = {model.domain().spec().bar_cracks.at(static_cast<std::size_t>(crack)).x0, 0.0};
  } else {
    const auto& f = model.domain().frames().at(static_cast<std::size_t>(crack));
    p = f.to_global({xi, f.eta1()});
  }
  const geom::RegionTag plus{geom::RegionTag::Kind::enriched, crack, Side::positive};
  const geom::RegionTag minus{geom::RegionTag::Kind::enriched, crack, Side::negative};
  return displacement(model, p, plus).u - displacement(model, p, minus).u;
}

void write_fields_csv(std::ostream& out, const FieldTable& t) {
  out << std::setprecision(17);
  if (t.dimension == 1) {
    out << "x,u,strain,stress,region,crack\n";
    for (const auto& r : t.rows)
      if (r.present)
        out << r.position.x() << ',' << r.u.x() << ',' << r.strain(0, 0) << ',' << r.stress(0, 0) << ','
            << (r.tag.enriched() ? "enriched" : "standard") << ',' << r.tag.crack << '\n';
    return;
  }
  out << "x,y,u,v,eps11,eps22,eps12,s11,s22,s12,von_mises,region,crack\n";
  for (const auto& r : t.rows)
    if (r.present)
      out << r.position.x() << ',' << r.position.y() << ',' << r.u.x() << ',' << r.u.y() << ',' << r.strain(0, 0)
          << ',' << r.strain(1, 1) << ',' << r.strain(0, 1) << ',' << r.stress(0, 0) << ',' << r.stress(1, 1) << ','
          << r.stress(0, 1) << ',' << r.von_mises << ',' << (r.tag.enriched() ? "enriched" : "standard") << ','
          << r.tag.crack << '\n';
}

void write_fields_vtk(std::ostream& out, const FieldTable& t) {
  out << std::setprecision(17);
  out << "# vtk DataFile Version 3.0\nxpinn fields\nASCII\nDATASET STRUCTURED_POINTS\n";
  out << "DIMENSIONS " << t.nx << ' ' << t.ny << " 1\n";
  out << "ORIGIN " << t.origin.x() << ' ' << t.origin.y() << " 0\n";
  out << "SPACING " << t.spacing.x() << ' ' << t.spacing.y() << " 1\n";
  out << "POINT_DATA " << t.rows.size() << '\n';
  out << "VECTORS displacement double\n";
  for (const auto& r : t.rows) out << r.u.x() << ' ' << r.u.y() << " 0\n";
  auto scalar = [&](const char* name, auto get) {
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (const auto& r : t.rows) out << get(r) << '\n';
  };
  scalar("von_mises", [](const FieldRow& r) { return r.von_mises; });
  scalar("s11", [](const FieldRow& r) { return r.stress(0, 0); });
  scalar("s22", [](const FieldRow& r) { return r.stress(1, 1); });
  scalar("s12", [](const FieldRow& r) { return r.stress(0, 1); });
  scalar("present", [](const FieldRow& r) { return r.present ? 1.0 : 0.0; });
}

}  // namespace xpinn::solver
