#include "xpinn/enrichment/enrichment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace xpinn::enrichment {

double heaviside(double x, double x0) { return x < x0 ? -1.0 : 1.0; }

namespace {

void check_sawtooth(const SawtoothParams& p) {
  if (p.order < 1) throw Error("sawtooth order must be >= 1");
  if (!(p.l0 > 0.0)) throw Error("sawtooth half-width l0 must be positive");
}

// Which branch applies at x: -1 left, +1 right, 0 outside the support.
int sawtooth_branch(double x, const SawtoothParams& p, Side side) {
  if (x < p.x0 - p.l0 || x > p.x0 + p.l0) return 0;
  if (x < p.x0) return -1;
  if (x > p.x0) return 1;
  if (side == Side::none) throw SideRequiredError("sawtooth evaluated at its jump x0 without a side token");
  return side == Side::negative ? -1 : 1;
}

double horner(const double* c, int n, double x) {
  double r = c[n - 1];
  for (int i = n - 2; i >= 0; --i) r = r * x + c[i];
  return r;
}

}  // namespace

// The right branch is written as ((x0 + l0 - x) / l0)^n so that it equals +1
// at x0 for every order; for even n it coincides with ((x - (x0 + l0)) / l0)^n.
double sawtooth(double x, const SawtoothParams& p, Side side) {
  check_sawtooth(p);
  switch (sawtooth_branch(x, p, side)) {
    case -1: return -std::pow(std::max(0.0, 1.0 + (x - p.x0) / p.l0), p.order);
    case 1: return std::pow(std::max(0.0, 1.0 - (x - p.x0) / p.l0), p.order);
    default: return 0.0;
  }
}

double sawtooth_deriv(double x, const SawtoothParams& p, Side side) {
  check_sawtooth(p);
  const double n = p.order;
  switch (sawtooth_branch(x, p, side)) {
    case -1: return -n / p.l0 * std::pow(std::max(0.0, 1.0 + (x - p.x0) / p.l0), p.order - 1);
    case 1: return -n / p.l0 * std::pow(std::max(0.0, 1.0 - (x - p.x0) / p.l0), p.order - 1);
    default: return 0.0;
  }
}

XiCoefficients xi_coefficients(double x1, double x2) {
  const double d = (x1 - x2) * (x1 * x1 - 2.0 * x1 * x2 + x2 * x2);
  XiCoefficients c;
  c.left = {-4.0 * (x1 * x1 * x1 + 3.0 * x2 * x1 * x1) / d, 24.0 * (x1 * x1 + x2 * x1) / d,
            -12.0 * (3.0 * x1 + x2) / d, 16.0 / d};
  c.right = {4.0 * (x2 * x2 * x2 + 3.0 * x1 * x2 * x2) / d, -24.0 * (x2 * x2 + x1 * x2) / d,
             12.0 * (x1 + 3.0 * x2) / d, -16.0 / d};
  return c;
}

LambdaCoefficients lambda_coefficients(double e1, double l0) {
  const double l2 = l0 * l0;
  LambdaCoefficients c;
  c.upper = {(l2 + 2.0 * l0 * e1 + e1 * e1) / l2, -2.0 * (l0 + e1) / l2, 1.0 / l2};
  c.lower = {-(l2 - 2.0 * l0 * e1 + e1 * e1) / l2, -2.0 * (l0 - e1) / l2, -1.0 / l2};
  return c;
}

CrackLocalFrame::CrackLocalFrame(const Vec2& tip1, const Vec2& tip2, double l0) : tip1_(tip1), tip2_(tip2), l0_(l0) {
  const Vec2 d = tip2 - tip1;
  if (d.norm() == 0.0) throw Error("crack tips coincide (zero-length crack)");
  if (!(l0 > 0.0)) throw Error("enrichment half-width l0 must be positive (zero-height rectangle)");
  theta_ = std::atan2(d.y(), d.x());
  cos_ = std::cos(theta_);
  sin_ = std::sin(theta_);
  const Vec2 a = to_local(tip1);
  const Vec2 b = to_local(tip2);
  xi1_ = a.x();
  xi2_ = b.x();
  eta1_ = a.y();
  xi_coef_ = enrichment::xi_coefficients(xi1_, xi2_);
  lambda_coef_ = enrichment::lambda_coefficients(eta1_, l0_);
}

Vec2 CrackLocalFrame::to_local(const Vec2& p) const {
  return {p.x() * cos_ + p.y() * sin_, -p.x() * sin_ + p.y() * cos_};
}

Vec2 CrackLocalFrame::to_global(const Vec2& q) const {
  return {q.x() * cos_ - q.y() * sin_, q.x() * sin_ + q.y() * cos_};
}

bool CrackLocalFrame::contains_local(const Vec2& q) const {
  return q.x() >= xi1_ && q.x() <= xi2_ && q.y() >= eta1_ - l0_ && q.y() <= eta1_ + l0_;
}

Vec2 local_coords(const Vec2& p, const CrackLocalFrame& frame) { return frame.to_local(p); }

ProfileValue xi_profile(double xi, const CrackLocalFrame& f) {
  if (xi < f.xi1() || xi > f.xi2()) return {};
  const double mid = 0.5 * (f.xi1() + f.xi2());
  const auto& a = xi <= mid ? f.xi_coefficients().left : f.xi_coefficients().right;
  const double da[3] = {a[1], 2.0 * a[2], 3.0 * a[3]};
  return {horner(a.data(), 4, xi), horner(da, 3, xi)};
}

namespace {

// Tolerance for treating a point as lying on the crack line when a side token is supplied.
bool near_line(double eta, double eta1, double l0) { return std::abs(eta - eta1) <= 1e-12 * (l0 + std::abs(eta1)); }

}  // namespace

ProfileValue lambda_profile(double eta, const CrackLocalFrame& f, Side side) {
  const double e1 = f.eta1();
  const double l0 = f.l0();
  if (eta < e1 - l0 || eta > e1 + l0) return {};
  bool upper;
  if (side != Side::none && near_line(eta, e1, l0)) {
    upper = side == Side::positive;
  } else if (eta == e1) {
    throw SideRequiredError("Lambda evaluated on the crack line without a side token");
  } else {
    upper = eta > e1;
  }
  const auto& b = upper ? f.lambda_coefficients().upper : f.lambda_coefficients().lower;
  return {b[0] + eta * (b[1] + eta * b[2]), b[1] + 2.0 * b[2] * eta};
}

EnrichmentValue enrichment_2d(const Vec2& p, const CrackLocalFrame& f, Side side) {
  const Vec2 q = f.to_local(p);
  if (!f.contains_local(q)) return {};
  const ProfileValue xi = xi_profile(q.x(), f);
  if (xi.value == 0.0 && xi.derivative == 0.0) return {};
  const ProfileValue lam = lambda_profile(q.y(), f, side);
  const double d_xi = xi.derivative * lam.value;
  const double d_eta = xi.value * lam.derivative;
  EnrichmentValue r;
  r.value = xi.value * lam.value;
  r.gradient = {f.cos_theta() * d_xi - f.sin_theta() * d_eta, f.sin_theta() * d_xi + f.cos_theta() * d_eta};
  return r;
}

std::array<double, 4> asymptotic_tips(double r, double theta) {
  if (r < 0.0) throw Error("asymptotic_tips: negative radius");
  const double sr = std::sqrt(r);
  const double s2 = std::sin(0.5 * theta);
  const double c2 = std::cos(0.5 * theta);
  const double st = std::sin(theta);
  return {sr * s2, sr * c2, sr * s2 * st, sr * c2 * st};
}

std::array<std::array<double, 2>, 4> asymptotic_tips_gradient(double r, double theta) {
  if (r < 0.0) throw Error("asymptotic_tips_gradient: negative radius");
  if (r == 0.0) throw SingularError("asymptotic tip functions are singular at r = 0");
  const double sr = std::sqrt(r);
  const double inv = 0.5 / sr;
  const double s2 = std::sin(0.5 * theta);
  const double c2 = std::cos(0.5 * theta);
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  return {{{inv * s2, 0.5 * sr * c2},
           {inv * c2, -0.5 * sr * s2},
           {inv * s2 * st, sr * (0.5 * c2 * st + s2 * ct)},
           {inv * c2 * st, sr * (-0.5 * s2 * st + c2 * ct)}}};
}

TipPolar tip_polar(const Vec2& p, const CrackLocalFrame& f, int tip, Side side) {
  const Vec2 q = f.to_local(p);
  // Offsets in a frame whose x-axis points away from the crack at this tip.
  const double sgn = tip == 0 ? -1.0 : 1.0;
  const double origin = tip == 0 ? f.xi1() : f.xi2();
  const double dx = sgn * (q.x() - origin);
  const double dy = sgn * (q.y() - f.eta1());
  TipPolar t;
  t.r = std::hypot(dx, dy);
  if (dy == 0.0 && dx < 0.0 && side != Side::none) {
    // On the faces behind the tip: eta above the crack maps to +pi at tip 2 and -pi at tip 1.
    const bool above = side == Side::positive;
    t.theta = (above == (tip == 1)) ? std::numbers::pi : -std::numbers::pi;
  } else {
    t.theta = std::atan2(dy, dx);
  }
  if (t.r > 0.0) {
    const double r2 = t.r * t.r;
    // d(dx)/d(xi) = d(dy)/d(eta) = sgn
    const Vec2 dr_local{sgn * dx / t.r, sgn * dy / t.r};
    const Vec2 dth_local{-sgn * dy / r2, sgn * dx / r2};
    auto to_global_grad = [&f](const Vec2& g) {
      return Vec2{f.cos_theta() * g.x() - f.sin_theta() * g.y(), f.sin_theta() * g.x() + f.cos_theta() * g.y()};
    };
    t.dr = to_global_grad(dr_local);
    t.dtheta = to_global_grad(dth_local);
  }
  return t;
}

SingularChannels singular_channels(const Vec2& p, const CrackLocalFrame& f, double radius, Side side) {
  SingularChannels out;
  for (auto& g : out.gradient) g.setZero();
  for (int tip = 0; tip < 2; ++tip) {
    const TipPolar t = tip_polar(p, f, tip, side);
    if (t.r >= radius) continue;
    const double q = (t.r / radius) * (t.r / radius);
    const double cut = (1.0 - q) * (1.0 - q);
    const double dcut_dr = -4.0 * (1.0 - q) * t.r / (radius * radius);
    const auto F = asymptotic_tips(t.r, t.theta);
    const auto dF = asymptotic_tips_gradient(t.r, t.theta);
    for (int b = 0; b < 4; ++b) {
      out.value[b] += cut * F[b];
      out.gradient[b] += (dcut_dr * F[b] + cut * dF[b][0]) * t.dr + cut * dF[b][1] * t.dtheta;
    }
  }
  return out;
}

}  // namespace xpinn::enrichment
