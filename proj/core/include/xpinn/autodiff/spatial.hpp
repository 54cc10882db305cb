#pragma once

#include "xpinn/autodiff/dual.hpp"
#include "xpinn/common.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace xpinn::ad {

/// A displacement-like field written against forward duals. The side token is
/// forwarded to any registered rule that needs it.
template <std::size_t N>
using SpatialField = std::function<std::vector<Dual<double, N>>(const std::array<Dual<double, N>, N>&, Side)>;

template <std::size_t N>
struct SpatialEvaluation {
  std::vector<double> values;
  /// jacobian[i][j] = d(component i) / d(coordinate j)
  std::vector<std::array<double, N>> jacobian;
};

template <std::size_t N>
SpatialEvaluation<N> eval_with_spatial_grad(const SpatialField<N>& field, const std::array<double, N>& point,
                                            Side side = Side::none) {
  std::array<Dual<double, N>, N> x;
  for (std::size_t k = 0; k < N; ++k) {
    if (!std::isfinite(point[k])) throw NumericalError("eval_with_spatial_grad: non-finite coordinate");
    x[k] = Dual<double, N>::variable(point[k], k);
  }
  const auto out = field(x, side);
  SpatialEvaluation<N> r;
  r.values.reserve(out.size());
  r.jacobian.reserve(out.size());
  for (const auto& d : out) {
    r.values.push_back(d.value);
    r.jacobian.push_back(d.partials);
  }
  return r;
}

}  // namespace xpinn::ad
