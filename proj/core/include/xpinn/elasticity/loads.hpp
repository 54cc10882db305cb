#pragma once

// Loads, boundary point sets and the energy functional
//   L = U + V + T,
//   U = 1/2 int sigma : eps dV,  V = -int f . u dV - int tbar . u dS,
//   T = int lambda_pen |u - ubar| dS.

#include "xpinn/elasticity/material.hpp"
#include "xpinn/geometry/domain.hpp"
#include "xpinn/quadrature/points.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace xpinn::elastic {

struct Traction {
  geom::BoundarySegment segment;
  Vec2 value = Vec2::Zero();  ///< force per area (per point load in 1D)
};

struct Dirichlet {
  geom::BoundarySegment segment;
  std::array<bool, 2> components{true, true};  ///< which displacement components are prescribed
  Vec2 value = Vec2::Zero();
  double penalty = 0.0;  ///< lambda_pen; 0 selects the default 10 E
};

struct LoadSpec {
  Vec2 body_force = Vec2::Zero();  ///< force per volume; in 1D N / A
  std::vector<Traction> tractions;
  std::vector<Dirichlet> dirichlet;
};

double penalty_of(const Dirichlet& d, const ElasticMaterial& m);

/// Dirichlet and traction segments must not overlap; penalties must be non-negative.
std::vector<std::string> validate(const LoadSpec& loads, const geom::DomainSpec& spec);

struct PointSets {
  std::vector<quad::QuadraturePoint> domain;
  std::vector<std::vector<quad::QuadraturePoint>> traction;   ///< one list per LoadSpec::tractions entry
  std::vector<std::vector<quad::QuadraturePoint>> dirichlet;  ///< one list per LoadSpec::dirichlet entry
  std::size_t size() const;
};

PointSets make_point_sets(const geom::Domain& domain, const LoadSpec& loads, const quad::QuadratureConfig& cfg);

template <class S>
struct EnergyTerms {
  S U{};
  S V{};
  S T{};
  S total() const { return U + V + T; }
};

/// Displacement and its gradient at one point; grad[i][j] = du_i/dx_j.
template <class S>
struct FieldSample {
  std::array<S, 2> u{};
  std::array<std::array<S, 2>, 2> grad{};
};

template <class S>
S pairwise_sum(std::vector<S>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 8) {
    S s{};
    for (std::size_t i = lo; i < hi; ++i) s = s + v[i];
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

/// Energy of any evaluable field on any scalar type. `field(point)` returns a
/// FieldSample<S>; boundary points only need `u`.
template <class S, class Field>
EnergyTerms<S> energy_loss(Field&& field, const PointSets& pts, const LoadSpec& loads, const ElasticMaterial& m) {
  using std::abs;
  const int dims = m.mode == Mode::bar_1d ? 1 : 2;
  if (pts.traction.size() != loads.tractions.size() || pts.dirichlet.size() != loads.dirichlet.size())
    throw Error("point sets do not match the load specification");
  for (const auto& d : pts.dirichlet)
    if (d.empty()) throw Error("prescribed displacement without Dirichlet boundary points");
  const double mass = m.mode == Mode::bar_1d ? m.area : 1.0;
  EnergyTerms<S> out;
  std::vector<S> u_terms, v_terms, t_terms;
  u_terms.reserve(pts.domain.size());
  v_terms.reserve(pts.domain.size());
  for (const auto& p : pts.domain) {
    const FieldSample<S> s = field(p);
    u_terms.push_back(p.weight * strain_energy_density(s.grad, m));
    S work{};
    for (int i = 0; i < dims; ++i) work = work + mass * loads.body_force[i] * s.u[i];
    v_terms.push_back(-p.weight * work);
  }
  for (std::size_t k = 0; k < loads.tractions.size(); ++k)
    for (const auto& p : pts.traction[k]) {
      const FieldSample<S> s = field(p);
      S work{};
      for (int i = 0; i < dims; ++i) work = work + loads.tractions[k].value[i] * s.u[i];
      v_terms.push_back(-p.weight * work);
    }
  for (std::size_t k = 0; k < loads.dirichlet.size(); ++k) {
    const Dirichlet& d = loads.dirichlet[k];
    const double lam = penalty_of(d, m);
    for (const auto& p : pts.dirichlet[k]) {
      const FieldSample<S> s = field(p);
      for (int i = 0; i < dims; ++i)
        if (d.components[static_cast<std::size_t>(i)]) t_terms.push_back(p.weight * lam * abs(s.u[i] - d.value[i]));
    }
  }
  out.U = pairwise_sum(u_terms, 0, u_terms.size());
  out.V = pairwise_sum(v_terms, 0, v_terms.size());
  out.T = pairwise_sum(t_terms, 0, t_terms.size());
  return out;
}

}  // namespace xpinn::elastic
