#include "xpinn/network/tangent_pass.hpp"

#include "xpinn/common.hpp"

#include <string>

namespace xpinn::nn {

namespace {


}  // namespace

void TangentPass::forward(const Mlp& net, const Eigen::MatrixXd& inputs) {
  if (inputs.rows() != net.input_dim()) throw Error("TangentPass: input dimension mismatch");
  net_ = &net;
  inputs_ = inputs;
  const auto& layers = net.layers();
  const Eigen::Index n_points = inputs.cols();
  const int dim = net.input_dim();
  const Activation act = net.activation();
  cache_.resize(layers.size());

  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& W = layers[l].weight;
    LayerCache& c = cache_[l];
    const bool hidden = l + 1 < layers.size();
    c.pre_tangent.resize(static_cast<std::size_t>(dim));
    c.out_tangent.resize(static_cast<std::size_t>(dim));

    Eigen::MatrixXd pre;
    if (l == 0) {
      pre.noalias() = W * inputs;
      for (int k = 0; k < dim; ++k) c.pre_tangent[k] = W.col(k).replicate(1, n_points);
    } else {
      const LayerCache& prev = cache_[l - 1];
      pre.noalias() = W * prev.out;
      for (int k = 0; k < dim; ++k) c.pre_tangent[k].noalias() = W * prev.out_tangent[k];
    }
    pre.colwise() += layers[l].bias;

    if (hidden) {
      c.out.resize(pre.rows(), pre.cols());
      c.d1.resize(pre.rows(), pre.cols());
      c.d2.resize(pre.rows(), pre.cols());
      for (Eigen::Index i = 0; i < pre.size(); ++i) {
        const ActivationJet j = activation_jet(act, pre.data()[i]);
        c.out.data()[i] = j.value;
        c.d1.data()[i] = j.first;
        c.d2.data()[i] = j.second;
      }
      for (int k = 0; k < dim; ++k) c.out_tangent[k] = c.d1.cwiseProduct(c.pre_tangent[k]);
    } else {
      c.out = std::move(pre);
      for (int k = 0; k < dim; ++k) c.out_tangent[k] = c.pre_tangent[k];
    }
    if (!c.out.allFinite()) throw NumericalError("non-finite value in layer " + std::to_string(l));
  }
}

void TangentPass::backward(const Eigen::MatrixXd& value_adjoint, std::span<const Eigen::MatrixXd> tangent_adjoint,
                           std::span<double> grad) const {
  if (net_ == nullptr) throw Error("TangentPass::backward before forward");
  const auto& layers = net_->layers();
  const int dim = net_->input_dim();
  if (static_cast<int>(tangent_adjoint.size()) != dim) throw Error("TangentPass::backward: tangent adjoint count");
  if (grad.size() != net_->parameter_count()) throw Error("TangentPass::backward: gradient size mismatch");

  // Parameter offsets per layer.
  std::vector<std::size_t> offsets(layers.size());
  std::size_t off = 0;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    offsets[l] = off;
    off += static_cast<std::size_t>(layers[l].weight.size() + layers[l].bias.size());
  }

  Eigen::MatrixXd out_bar = value_adjoint;
  std::vector<Eigen::MatrixXd> out_tbar(tangent_adjoint.begin(), tangent_adjoint.end());
  Eigen::MatrixXd z_bar;
  std::vector<Eigen::MatrixXd> z_tbar(static_cast<std::size_t>(dim));

  for (std::size_t l = layers.size(); l-- > 0;) {
    const auto& W = layers[l].weight;
    const LayerCache& c = cache_[l];
    const bool hidden = l + 1 < layers.size();

    if (hidden) {
      z_bar = c.d1.cwiseProduct(out_bar);
      for (int k = 0; k < dim; ++k) {
        z_bar += c.d2.cwiseProduct(c.pre_tangent[k].cwiseProduct(out_tbar[k]));
        z_tbar[k] = c.d1.cwiseProduct(out_tbar[k]);
      }
    } else {
      z_bar = out_bar;
      for (int k = 0; k < dim; ++k) z_tbar[k] = out_tbar[k];
    }

    // Products go to aligned temporaries first: Eigen's kernels may sum in an
    // order that depends on the alignment of the destination, and the flat
    // gradient buffer has none.
    Eigen::MatrixXd wg;
    Eigen::VectorXd bg = z_bar.rowwise().sum();
    if (l == 0) {
      wg.noalias() = z_bar * inputs_.transpose();
      for (int k = 0; k < dim; ++k) wg.col(k) += z_tbar[k].rowwise().sum();
    } else {
      const LayerCache& prev = cache_[l - 1];
      wg.noalias() = z_bar * prev.out.transpose();
      for (int k = 0; k < dim; ++k) wg.noalias() += z_tbar[k] * prev.out_tangent[k].transpose();
    }
    double* wd = grad.data() + offsets[l];
    for (Eigen::Index r = 0; r < W.rows(); ++r)
      for (Eigen::Index c = 0; c < W.cols(); ++c) wd[r * W.cols() + c] += wg(r, c);
    double* bd = wd + W.size();
    for (Eigen::Index r = 0; r < W.rows(); ++r) bd[r] += bg(r);
    if (l > 0) {
      out_bar.noalias() = W.transpose() * z_bar;
      for (int k = 0; k < dim; ++k) out_tbar[k].noalias() = W.transpose() * z_tbar[k];
    }
  }
}

}  // namespace xpinn::nn
