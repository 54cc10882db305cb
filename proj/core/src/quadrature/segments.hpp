#pragma once

// Interval helpers shared by the point generators.

#include "xpinn/geometry/domain.hpp"
#include "xpinn/quadrature/gauss_legendre.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace xpinn::quad {

struct Interval {
  double a = 0.0;
  double b = 0.0;
};

/// `base` minus the union of `cut`, as sorted disjoint intervals of positive length.
inline std::vector<Interval> subtract(Interval base, std::vector<Interval> cut) {
  std::sort(cut.begin(), cut.end(), [](const Interval& l, const Interval& r) { return l.a < r.a; });
  std::vector<Interval> out;
  double cursor = base.a;
  const double tiny = 1e-14 * std::max(1.0, base.b - base.a);
  for (const Interval& c : cut) {
    if (c.b <= cursor) continue;
    if (c.a >= base.b) break;
    if (c.a - cursor > tiny) out.push_back({cursor, std::min(c.a, base.b)});
    cursor = std::max(cursor, c.b);
  }
  if (base.b - cursor > tiny) out.push_back({cursor, base.b});
  return out;
}

/// k equal pieces of [a, b] with m Gauss points each; emit(x, weight).
template <class F>
void composite_gauss(double a, double b, int k, int m, F&& emit) {
  const GaussRule& g = gauss_legendre(m);
  const double h = (b - a) / k;
  for (int i = 0; i < k; ++i) {
    const double lo = a + i * h;
    const double hi = i + 1 == k ? b : lo + h;
    const double mid = 0.5 * (lo + hi);
    const double jac = 0.5 * (hi - lo);
    for (std::size_t j = 0; j < g.nodes.size(); ++j) emit(mid + jac * g.nodes[j], jac * g.weights[j]);
  }
}

/// Sorted bar ends and enrichment breakpoints x0 - l0, x0, x0 + l0.
std::vector<double> bar_breakpoints(const geom::DomainSpec& s);

}  // namespace xpinn::quad
