#pragma once

// Closed-form solution of the cracked bar: u'' + N/(AE) = 0 on both sides of a
// traction-free crack at x0, with u(0) = 0 and u(L) = u0.

#include "xpinn/common.hpp"

namespace xpinn::problems {

struct BarParams {
  double A = 1.0;
  double E = 1.0;
  double L = 1.0;
  double x0 = 0.3;
  double N = 10.0;   ///< axial load per unit length
  double u0 = 0.1;   ///< prescribed end displacement
};

/// Throws DomainError outside [0, L] and SideRequiredError at x0 without a side.
double bar_1d_analytic(double x, const BarParams& p, Side side = Side::none);
double bar_1d_analytic_derivative(double x, const BarParams& p, Side side = Side::none);

/// Total potential -N^2 (x0^3 + (L - x0)^3) / (6 A E) - N u0 (L - x0).
double bar_1d_potential(const BarParams& p);

}  // namespace xpinn::problems
