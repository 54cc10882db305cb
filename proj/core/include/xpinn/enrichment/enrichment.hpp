#pragma once

// Closed-form enrichment kernels and their analytic derivatives.
//
//   heaviside      1D step, -1 left of x0 and +1 from x0 on
//   sawtooth       1D ramp of order n on [x0 - l0, x0 + l0] jumping from -1 to +1 at x0
//   enrichment_2d  D(xi, eta) = Xi(xi) * Lambda(eta) on a rectangle aligned with the crack
//   asymptotic_tips  sqrt(r) crack-tip functions F1..F4

#include "xpinn/common.hpp"

#include <array>

namespace xpinn::enrichment {

double heaviside(double x, double x0);

struct SawtoothParams {
  double x0 = 0.0;
  double l0 = 0.1;
  int order = 2;
};

/// Zero outside [x0 - l0, x0 + l0]. At x == x0 a side token is required.
double sawtooth(double x, const SawtoothParams& p, Side side = Side::none);
double sawtooth_deriv(double x, const SawtoothParams& p, Side side = Side::none);

/// Cubic branch pair of Xi (left on [xi1, mid], right on [mid, xi2]); a[i] multiplies xi^i.
struct XiCoefficients {
  std::array<double, 4> left{};
  std::array<double, 4> right{};
};

/// Quadratic branch pair of Lambda (upper on [eta1, eta1 + l0], lower on [eta1 - l0, eta1]); b[i] multiplies eta^i.
struct LambdaCoefficients {
  std::array<double, 3> upper{};
  std::array<double, 3> lower{};
};

XiCoefficients xi_coefficients(double xi1, double xi2);
LambdaCoefficients lambda_coefficients(double eta1, double l0);

/// Crack-aligned frame: xi along the crack, eta across it.
class CrackLocalFrame {
 public:
  /// Throws Error for coincident tips or l0 <= 0.
  CrackLocalFrame(const Vec2& tip1, const Vec2& tip2, double l0);

  Vec2 to_local(const Vec2& p) const;
  Vec2 to_global(const Vec2& local) const;

  const Vec2& tip1() const { return tip1_; }
  const Vec2& tip2() const { return tip2_; }
  double theta() const { return theta_; }
  double cos_theta() const { return cos_; }
  double sin_theta() const { return sin_; }
  double xi1() const { return xi1_; }
  double xi2() const { return xi2_; }
  double eta1() const { return eta1_; }
  double l0() const { return l0_; }
  double length() const { return xi2_ - xi1_; }
  const XiCoefficients& xi_coefficients() const { return xi_coef_; }
  const LambdaCoefficients& lambda_coefficients() const { return lambda_coef_; }

  /// Closed rectangle [xi1, xi2] x [eta1 - l0, eta1 + l0].
  bool contains_local(const Vec2& local) const;

 private:
  Vec2 tip1_, tip2_;
  double l0_;
  double theta_, cos_, sin_;
  double xi1_, xi2_, eta1_;
  XiCoefficients xi_coef_;
  LambdaCoefficients lambda_coef_;
};

/// (xi, eta) of a global point; throws for coincident tips (via the frame).
Vec2 local_coords(const Vec2& p, const CrackLocalFrame& frame);

struct ProfileValue {
  double value = 0.0;
  double derivative = 0.0;
};

ProfileValue xi_profile(double xi, const CrackLocalFrame& frame);
/// Requires a side token exactly at eta == eta1.
ProfileValue lambda_profile(double eta, const CrackLocalFrame& frame, Side side = Side::none);

struct EnrichmentValue {
  double value = 0.0;
  Vec2 gradient = Vec2::Zero();  ///< global coordinates
};

/// D = Xi * Lambda inside the crack rectangle, zero outside.
EnrichmentValue enrichment_2d(const Vec2& p, const CrackLocalFrame& frame, Side side = Side::none);

/// F1..F4 at polar coordinates (r, theta) around a tip.
std::array<double, 4> asymptotic_tips(double r, double theta);
/// d/dr and d/dtheta of F1..F4. Throws SingularError at r = 0.
std::array<std::array<double, 2>, 4> asymptotic_tips_gradient(double r, double theta);

struct TipPolar {
  double r = 0.0;
  double theta = 0.0;
  Vec2 dr = Vec2::Zero();      ///< gradient of r in global coordinates
  Vec2 dtheta = Vec2::Zero();  ///< gradient of theta in global coordinates
};

/// Polar coordinates around tip 0 (tip1) or 1 (tip2), with theta = 0 pointing
/// away from the crack and the branch cut along the crack faces. The side token
/// picks +pi or -pi for points exactly on the faces behind the tip.
TipPolar tip_polar(const Vec2& p, const CrackLocalFrame& frame, int tip, Side side = Side::none);

/// Four singular channels: sum over both tips of c(r) F_beta(r, theta), with
/// c(r) = (1 - (r/radius)^2)^2 inside radius and 0 outside.
struct SingularChannels {
  std::array<double, 4> value{};
  std::array<Vec2, 4> gradient{};
};
SingularChannels singular_channels(const Vec2& p, const CrackLocalFrame& frame, double radius, Side side);

}  // namespace xpinn::enrichment
