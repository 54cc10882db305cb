#pragma once

#include <vector>

namespace xpinn::quad {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

constexpr int kMaxGaussOrder = 16;

/// Gauss-Legendre nodes and weights on [-1, 1], ascending nodes. 1 <= m <= 16.
const GaussRule& gauss_legendre(int m);

}  // namespace xpinn::quad
