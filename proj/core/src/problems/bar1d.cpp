#include "xpinn/problems/bar1d.hpp"

namespace xpinn::problems {

namespace {

bool left_branch(double x, const BarParams& p, Side side) {
  if (x < 0.0 || x > p.L) throw DomainError("bar coordinate outside [0, L]");
  if (x == p.x0) {
    if (side == Side::none) throw SideRequiredError("bar solution at the crack needs a side token");
    return side == Side::negative;
  }
  return x < p.x0;
}

}  // namespace

double bar_1d_analytic(double x, const BarParams& p, Side side) {
  const double k = 1.0 / (2.0 * p.A * p.E);
  if (left_branch(x, p, side)) return -k * (p.N * x * x - 2.0 * p.x0 * p.N * x);
  return -k * p.N * (x - p.x0) * (x - p.x0) + k * p.N * (p.L - p.x0) * (p.L - p.x0) + p.u0;
}

double bar_1d_analytic_derivative(double x, const BarParams& p, Side side) {
  const double c = p.N / (p.A * p.E);
  if (left_branch(x, p, side)) return c * (p.x0 - x);
  return -c * (x - p.x0);
}

double bar_1d_potential(const BarParams& p) {
  const double l = p.L - p.x0;
  return -p.N * p.N * (p.x0 * p.x0 * p.x0 + l * l * l) / (6.0 * p.A * p.E) - p.N * p.u0 * l;
}

}  // namespace xpinn::problems
