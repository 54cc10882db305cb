#pragma once

#include <cmath>
#include <string_view>

namespace xpinn::nn {

/// ReLU and HardSwish are intentionally absent: both fail to converge on the
/// energy loss for cracked bars.
enum class Activation { tanh, gelu, sigmoid };

/// Throws ConfigError naming the unknown tag.
Activation parse_activation(std::string_view name);
std::string_view to_string(Activation a);

double activation_apply(Activation a, double x);

struct ActivationJet {
  double value;
  double first;
  double second;
};

/// Value, first and second derivative. The second derivative is what the
/// strain-dependent loss needs when it is differentiated w.r.t. weights.
ActivationJet activation_jet(Activation a, double x);

/// Same formula for any scalar type with tanh/exp/erf overloads (Dual, Var).
template <class S>
S activate(Activation a, const S& z) {
  using std::erf;
  using std::exp;
  using std::tanh;
  switch (a) {
    case Activation::tanh:
      return tanh(z);
    case Activation::sigmoid:
      return 1.0 / (1.0 + exp(-z));
    case Activation::gelu:
      return 0.5 * z * (1.0 + erf(z * 0.70710678118654752440));
  }
  return z;
}

}  // namespace xpinn::nn
