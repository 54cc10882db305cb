#include "xpinn/quadrature/gauss_legendre.hpp"

#include "xpinn/common.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

namespace xpinn::quad {

namespace {

// P_m(x) and P'_m(x) by the three-term recurrence (m >= 1).
std::pair<double, double> legendre(int m, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= m; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, m * (x * p1 - p0) / (x * x - 1.0)};
}

GaussRule compute(int m) {
  GaussRule r;
  if (m == 1) {
    r.nodes = {0.0};
    r.weights = {2.0};
    return r;
  }
  r.nodes.resize(static_cast<std::size_t>(m));
  r.weights.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    double x = -std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(m, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(m, x).second;
    r.nodes[static_cast<std::size_t>(i)] = x;
    r.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  for (int i = 0; i < m / 2; ++i) {
    const auto a = static_cast<std::size_t>(i);
    const auto b = static_cast<std::size_t>(m - 1 - i);
    const double x = 0.5 * (r.nodes[b] - r.nodes[a]);
    const double w = 0.5 * (r.weights[a] + r.weights[b]);
    r.nodes[a] = -x;
    r.nodes[b] = x;
    r.weights[a] = r.weights[b] = w;
  }
  if (m % 2 == 1) r.nodes[static_cast<std::size_t>(m / 2)] = 0.0;
  return r;
}

}  // namespace

const GaussRule& gauss_legendre(int m) {
  if (m < 1 || m > kMaxGaussOrder)
    throw Error("unsupported Gauss-Legendre order " + std::to_string(m) + " (supported: 1..16)");
  static std::array<GaussRule, kMaxGaussOrder + 1> cache;
  static std::once_flag flags[kMaxGaussOrder + 1];
  std::call_once(flags[m], [m] { cache[static_cast<std::size_t>(m)] = compute(m); });
  return cache[static_cast<std::size_t>(m)];
}

}  // namespace xpinn::quad
