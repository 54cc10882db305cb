#pragma once

#include "xpinn/elasticity/material.hpp"
#include "xpinn/solver/model.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace xpinn::solver {

struct FieldRow {
  Vec2 position = Vec2::Zero();
  bool present = false;  ///< false inside holes
  geom::RegionTag tag;
  Vec2 u = Vec2::Zero();
  Matrix2 strain = Matrix2::Zero();
  Matrix2 stress = Matrix2::Zero();
  double von_mises = 0.0;
};

/// Regular lattice including the boundary: nx x ny nodes in 2D, nx nodes in 1D
/// (ny ignored). Row-major with x fastest. Nodes on a crack line take the positive face.
struct FieldTable {
  int nx = 0, ny = 0;
  int dimension = 2;
  Vec2 origin = Vec2::Zero();
  Vec2 spacing = Vec2::Zero();
  std::vector<FieldRow> rows;
};

FieldTable evaluate_fields(const XpinnModel& model, const elastic::ElasticMaterial& material, int nx, int ny);

/// u(+) - u(-) across a crack at local abscissa xi (2D) or at x0 (1D, xi ignored).
Vec2 crack_jump(const XpinnModel& model, int crack, double xi);

/// Header row, present rows only, 17 significant digits.
void write_fields_csv(std::ostream& out, const FieldTable& t);
/// Legacy ASCII STRUCTURED_POINTS with point data; absent nodes carry zeros and present = 0.
void write_fields_vtk(std::ostream& out, const FieldTable& t);

}  // namespace xpinn::solver
