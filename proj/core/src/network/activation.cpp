#include "xpinn/network/activation.hpp"

#include "xpinn/common.hpp"

#include <string>

namespace xpinn::nn {

Activation parse_activation(std::string_view name) {
  if (name == "tanh") return Activation::tanh;
  if (name == "gelu") return Activation::gelu;
  if (name == "sigmoid") return Activation::sigmoid;
  throw ConfigError("unknown activation '" + std::string(name) + "' (expected tanh, gelu or sigmoid)");
}

std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::tanh: return "tanh";
    case Activation::gelu: return "gelu";
    case Activation::sigmoid: return "sigmoid";
  }
  return "unknown";
}

double activation_apply(Activation a, double x) { return activate<double>(a, x); }

ActivationJet activation_jet(Activation a, double x) {
  switch (a) {
    case Activation::tanh: {
      const double t = std::tanh(x);
      const double d = 1.0 - t * t;
      return {t, d, -2.0 * t * d};
    }
    case Activation::sigmoid: {
      const double s = 1.0 / (1.0 + std::exp(-x));
      const double d = s * (1.0 - s);
      return {s, d, d * (1.0 - 2.0 * s)};
    }
    case Activation::gelu: {
      constexpr double inv_sqrt2 = 0.70710678118654752440;
      constexpr double inv_sqrt_2pi = 0.39894228040143267794;
      const double cdf = 0.5 * (1.0 + std::erf(x * inv_sqrt2));
      const double pdf = inv_sqrt_2pi * std::exp(-0.5 * x * x);
      return {x * cdf, cdf + x * pdf, pdf * (2.0 - x * x)};
    }
  }
  return {x, 1.0, 0.0};
}

}  // namespace xpinn::nn
