#pragma once

// Batched forward pass that carries input-space tangents (forward duals, one
// per input coordinate) through every layer, and the matching reverse pass.
//
// Per hidden layer:  z = W a + b,  t_z = W t_a,  a' = phi(z),  t_a' = phi'(z) t_z.
// Reverse, given adjoints (abar', tbar'):
//   tbar_z = phi'(z) tbar'
//   zbar   = phi'(z) abar' + phi''(z) sum_k t_z,k tbar'_k
//   Wbar  += zbar a^T + sum_k tbar_z,k t_a,k^T,   bbar += zbar
//   abar   = W^T zbar,  tbar_a = W^T tbar_z
// This is the dual arithmetic of the forward pass differentiated by hand at
// layer granularity, so a loss depending on du/dx yields d/dtheta in one sweep.

#include "xpinn/network/mlp.hpp"

#include <Eigen/Core>

#include <span>
#include <vector>

namespace xpinn::nn {

class TangentPass {
 public:
  /// `inputs` has one column per point (input_dim x P).
  void forward(const Mlp& net, const Eigen::MatrixXd& inputs);

  /// output_dim x P
  const Eigen::MatrixXd& value() const { return cache_.back().out; }
  /// d(output)/d(input k), output_dim x P
  const Eigen::MatrixXd& tangent(int k) const { return cache_.back().out_tangent[static_cast<std::size_t>(k)]; }
  Eigen::Index points() const { return inputs_.cols(); }

  /// Accumulates dL/dtheta into `grad` (flat layout of Mlp::parameters()).
  /// `tangent_adjoint` holds one output_dim x P matrix per input coordinate.
  void backward(const Eigen::MatrixXd& value_adjoint, std::span<const Eigen::MatrixXd> tangent_adjoint,
                std::span<double> grad) const;

 private:
  struct LayerCache {
    Eigen::MatrixXd out;
    std::vector<Eigen::MatrixXd> out_tangent;
    std::vector<Eigen::MatrixXd> pre_tangent;
    Eigen::MatrixXd d1;
    Eigen::MatrixXd d2;
  };

  const Mlp* net_ = nullptr;
  Eigen::MatrixXd inputs_;
  std::vector<LayerCache> cache_;
};

}  // namespace xpinn::nn
