#pragma once

// Energy of an XpinnModel over fixed quadrature sets, with its parameter gradient.
//
// ModelEnergy is the batched production path: enrichment values are
// precomputed once per point, every network runs one TangentPass over its
// points, and the adjoints of u and du/dx are routed back as
//   N_C:  value adjoint ubar,                   tangent adjoint gbar
//   N_D:  value adjoint ubar D + gbar . grad D,  tangent adjoint D gbar
// so each enriched network only ever sees the points of its own region.
//
// tape_energy is the reference path through the generic dual/tape machinery.

#include "xpinn/elasticity/loads.hpp"
#include "xpinn/network/tangent_pass.hpp"
#include "xpinn/solver/model.hpp"

#include <Eigen/Core>

#include <span>
#include <vector>

namespace xpinn::solver {

using Terms = elastic::EnergyTerms<double>;

class ModelEnergy {
 public:
  ModelEnergy(const XpinnModel& model, elastic::PointSets points, elastic::LoadSpec loads,
              elastic::ElasticMaterial material);

  /// Energy at the model's current parameters. When `grad` is non-empty it
  /// receives dL/dtheta in the flat parameter layout (overwritten).
  Terms evaluate(const XpinnModel& model, std::span<double> grad = {});

  const elastic::PointSets& points() const { return points_; }
  const elastic::LoadSpec& loads() const { return loads_; }
  const elastic::ElasticMaterial& material() const { return material_; }
  std::size_t point_count() const { return static_cast<std::size_t>(x_.cols()); }

 private:
  enum class Kind : std::uint8_t { domain, traction, dirichlet };

  struct Group {
    std::vector<Eigen::Index> columns;
    Eigen::MatrixXd x;                   ///< dim x n
    Eigen::RowVectorXd d;                ///< enrichment value
    Eigen::MatrixXd grad_d;              ///< dim x n
    Eigen::MatrixXd e;                   ///< 4 x n singular channels
    std::vector<Eigen::MatrixXd> grad_e; ///< per channel, dim x n
  };

  void forward_field(const FieldNet& f, const Eigen::MatrixXd& x, std::vector<nn::TangentPass>& passes,
                     Eigen::MatrixXd& value, std::vector<Eigen::MatrixXd>& tangent);
  void backward_field(const FieldNet& f, const std::vector<nn::TangentPass>& passes, const Eigen::MatrixXd& vbar,
                      const std::vector<Eigen::MatrixXd>& tbar, std::span<double> grad, std::size_t& offset) const;

  int dim_;
  elastic::PointSets points_;
  elastic::LoadSpec loads_;
  elastic::ElasticMaterial material_;

  Eigen::MatrixXd x_;  ///< dim x P, all points: domain, tractions, dirichlet
  std::vector<Kind> kind_;
  std::vector<int> set_;  ///< traction or dirichlet index
  Eigen::VectorXd weight_;
  std::vector<Group> enriched_groups_;  ///< one per enriched network

  // Work buffers reused between evaluations.
  std::vector<nn::TangentPass> pass_c_;
  std::vector<std::vector<nn::TangentPass>> pass_d_, pass_s_;
};

struct TapeEnergy {
  Terms terms;
  std::vector<double> gradient;
};

/// Same functional through displacement_dual<ad::Var> and a reverse sweep.
TapeEnergy tape_energy(const XpinnModel& model, const elastic::PointSets& points, const elastic::LoadSpec& loads,
                       const elastic::ElasticMaterial& material);

}  // namespace xpinn::solver
