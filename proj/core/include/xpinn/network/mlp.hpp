#pragma once

#include "xpinn/network/activation.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace xpinn::nn {

struct DenseLayer {
  Eigen::MatrixXd weight;  ///< fan_out x fan_in
  Eigen::VectorXd bias;    ///< fan_out
};

/// Dense perceptron z_l = phi(W_l z_{l-1} + b_l) with a linear output layer.
///
/// Flat parameter order (used by optimizers, gradients and checkpoints):
/// layer by layer, weights row-major, then the bias.
class Mlp {
 public:
  Mlp() = default;
  Mlp(std::vector<DenseLayer> layers, Activation activation);

  /// All-zero parameters for the given sizes {input, hidden..., output}.
  static Mlp zeros(const std::vector<int>& sizes, Activation activation);

  int input_dim() const;
  int output_dim() const;
  std::vector<int> layer_sizes() const;
  Activation activation() const { return activation_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }
  std::vector<DenseLayer>& layers() { return layers_; }

  std::size_t parameter_count() const;
  std::vector<double> parameters() const;
  void copy_parameters_to(std::span<double> out) const;
  void assign_parameters(std::span<const double> in);

  /// Throws NumericalError with the layer index on a non-finite intermediate.
  Eigen::VectorXd forward(const Eigen::VectorXd& x) const;

 private:
  std::vector<DenseLayer> layers_;
  Activation activation_ = Activation::tanh;
};

struct Architecture {
  int hidden_layers = 2;
  int neurons = 20;
  Activation activation = Activation::tanh;
  std::uint64_t seed = 0;
};

enum class NetworkRole { standard, enriched, singular };

/// Minimum-size guidance for the cracked bar: at least 2 hidden layers,
/// 10 neurons for standard nets and 5 for enriched ones. Returns warnings only.
std::vector<std::string> architecture_warnings(const Architecture& arch, NetworkRole role);

/// Glorot-uniform weights, zero biases, deterministic in arch.seed.
Mlp init(const Architecture& arch, int input_dim, int output_dim);

/// Forward pass on any scalar type, reading parameters from a flat span laid
/// out as in Mlp::parameters(). `shape` supplies layer sizes and activation.
template <class S>
std::vector<S> forward_generic(const Mlp& shape, std::span<const S> params, std::span<const S> x) {
  std::vector<S> a(x.begin(), x.end());
  std::size_t offset = 0;
  const auto& layers = shape.layers();
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto rows = static_cast<std::size_t>(layers[l].weight.rows());
    const auto cols = static_cast<std::size_t>(layers[l].weight.cols());
    std::vector<S> z(rows);
    const std::size_t bias_offset = offset + rows * cols;
    for (std::size_t r = 0; r < rows; ++r) {
      S acc = params[bias_offset + r];
      for (std::size_t c = 0; c < cols; ++c) acc = acc + params[offset + r * cols + c] * a[c];
      z[r] = l + 1 < layers.size() ? activate(shape.activation(), acc) : acc;
    }
    offset = bias_offset + rows;
    a = std::move(z);
  }
  return a;
}

}  // namespace xpinn::nn
