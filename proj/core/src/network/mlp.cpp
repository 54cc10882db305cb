#include "xpinn/network/mlp.hpp"

#include "xpinn/common.hpp"

#include <cmath>
#include <random>

namespace xpinn::nn {

Mlp::Mlp(std::vector<DenseLayer> layers, Activation activation)
    : layers_(std::move(layers)), activation_(activation) {
  if (layers_.empty()) throw Error("Mlp needs at least one layer");
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const auto& layer = layers_[l];
    if (layer.weight.rows() == 0 || layer.weight.cols() == 0)
      throw Error("Mlp layer " + std::to_string(l) + " has zero size");
    if (layer.bias.size() != layer.weight.rows())
      throw Error("Mlp layer " + std::to_string(l) + ": bias size does not match weight rows");
    if (l > 0 && layer.weight.cols() != layers_[l - 1].weight.rows())
      throw Error("Mlp layer " + std::to_string(l) + ": fan_in does not match previous fan_out");
  }
}

Mlp Mlp::zeros(const std::vector<int>& sizes, Activation activation) {
  if (sizes.size() < 2) throw Error("Mlp::zeros needs input and output sizes");
  std::vector<DenseLayer> layers;
  for (std::size_t l = 1; l < sizes.size(); ++l) {
    if (sizes[l] <= 0 || sizes[l - 1] <= 0) throw Error("Mlp::zeros: zero-size layer");
    layers.push_back({Eigen::MatrixXd::Zero(sizes[l], sizes[l - 1]), Eigen::VectorXd::Zero(sizes[l])});
  }
  return Mlp(std::move(layers), activation);
}

int Mlp::input_dim() const { return layers_.empty() ? 0 : static_cast<int>(layers_.front().weight.cols()); }

int Mlp::output_dim() const { return layers_.empty() ? 0 : static_cast<int>(layers_.back().weight.rows()); }

std::vector<int> Mlp::layer_sizes() const {
  std::vector<int> sizes;
  if (layers_.empty()) return sizes;
  sizes.push_back(input_dim());
  for (const auto& l : layers_) sizes.push_back(static_cast<int>(l.weight.rows()));
  return sizes;
}

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += static_cast<std::size_t>(l.weight.size() + l.bias.size());
  return n;
}

std::vector<double> Mlp::parameters() const {
  std::vector<double> p(parameter_count());
  copy_parameters_to(p);
  return p;
}

void Mlp::copy_parameters_to(std::span<double> out) const {
  if (out.size() != parameter_count()) throw Error("Mlp::copy_parameters_to: size mismatch");
  std::size_t k = 0;
  for (const auto& l : layers_) {
    for (Eigen::Index r = 0; r < l.weight.rows(); ++r)
      for (Eigen::Index c = 0; c < l.weight.cols(); ++c) out[k++] = l.weight(r, c);
    for (Eigen::Index r = 0; r < l.bias.size(); ++r) out[k++] = l.bias(r);
  }
}

void Mlp::assign_parameters(std::span<const double> in) {
  if (in.size() != parameter_count()) throw Error("Mlp::assign_parameters: size mismatch");
  std::size_t k = 0;
  for (auto& l : layers_) {
    for (Eigen::Index r = 0; r < l.weight.rows(); ++r)
      for (Eigen::Index c = 0; c < l.weight.cols(); ++c) l.weight(r, c) = in[k++];
    for (Eigen::Index r = 0; r < l.bias.size(); ++r) l.bias(r) = in[k++];
  }
}

Eigen::VectorXd Mlp::forward(const Eigen::VectorXd& x) const {
  if (x.size() != input_dim()) throw Error("Mlp::forward: input dimension mismatch");
  Eigen::VectorXd a = x;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    Eigen::VectorXd z = layers_[l].weight * a + layers_[l].bias;
    if (l + 1 < layers_.size()) z = z.unaryExpr([this](double v) { return activation_apply(activation_, v); });
    if (!z.allFinite()) throw NumericalError("non-finite value in layer " + std::to_string(l));
    a = std::move(z);
  }
  return a;
}

std::vector<std::string> architecture_warnings(const Architecture& arch, NetworkRole role) {
  std::vector<std::string> w;
  const int min_neurons = role == NetworkRole::standard ? 10 : 5;
  if (arch.hidden_layers < 2)
    w.push_back("hidden_layers=" + std::to_string(arch.hidden_layers) + " is below the recommended minimum of 2");
  if (arch.neurons < min_neurons)
    w.push_back("neurons=" + std::to_string(arch.neurons) + " is below the recommended minimum of " +
                std::to_string(min_neurons));
  return w;
}

Mlp init(const Architecture& arch, int input_dim, int output_dim) {
  if (arch.hidden_layers < 0 || arch.neurons <= 0 || input_dim <= 0 || output_dim <= 0)
    throw Error("init: zero-size layer in architecture");
  std::vector<int> sizes{input_dim};
  for (int i = 0; i < arch.hidden_layers; ++i) sizes.push_back(arch.neurons);
  sizes.push_back(output_dim);

  std::mt19937_64 rng(arch.seed);
  // 53-bit uniform in [0, 1) from the raw engine output; portable across standard libraries.
  auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  std::vector<DenseLayer> layers;
  for (std::size_t l = 1; l < sizes.size(); ++l) {
    const int fan_in = sizes[l - 1];
    const int fan_out = sizes[l];
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    DenseLayer layer{Eigen::MatrixXd(fan_out, fan_in), Eigen::VectorXd::Zero(fan_out)};
    for (int r = 0; r < fan_out; ++r)
      for (int c = 0; c < fan_in; ++c) layer.weight(r, c) = limit * (2.0 * uniform() - 1.0);
    layers.push_back(std::move(layer));
  }
  return Mlp(std::move(layers), arch.activation);
}

}  // namespace xpinn::nn
