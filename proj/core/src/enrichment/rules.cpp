#include "xpinn/enrichment/rules.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace xpinn::enrichment {

ad::CustomRule make_heaviside_rule(double x0, std::string tag) {
  ad::CustomRule r;
  r.tag = std::move(tag);
  r.arity = 1;
  r.primal = [x0](std::span<const double> x, Side) { return heaviside(x[0], x0); };
  r.derivative = [](std::span<const double>, Side, std::span<double> g) { g[0] = 0.0; };
  r.on_jump = [x0](std::span<const double> x) { return x[0] == x0; };
  r.singular_distance = [x0](std::span<const double> x) { return std::abs(x[0] - x0); };
  return r;
}

ad::CustomRule make_sawtooth_rule(const SawtoothParams& p, std::string tag) {
  if (p.order < 1) throw Error("sawtooth order must be >= 1");
  ad::CustomRule r;
  r.tag = std::move(tag);
  r.arity = 1;
  r.primal = [p](std::span<const double> x, Side s) { return sawtooth(x[0], p, s); };
  r.derivative = [p](std::span<const double> x, Side s, std::span<double> g) { g[0] = sawtooth_deriv(x[0], p, s); };
  r.on_jump = [p](std::span<const double> x) { return x[0] == p.x0; };
  r.singular_distance = [p](std::span<const double> x) {
    const double d = std::abs(x[0] - p.x0);
    // Order 1 has kinks at the support ends as well.
    if (p.order == 1) return std::min({d, std::abs(x[0] - p.x0 + p.l0), std::abs(x[0] - p.x0 - p.l0)});
    return d;
  };
  return r;
}

ad::CustomRule make_xi_rule(const CrackLocalFrame& f, std::string tag) {
  ad::CustomRule r;
  r.tag = std::move(tag);
  r.arity = 1;
  r.primal = [f](std::span<const double> x, Side) { return xi_profile(x[0], f).value; };
  r.derivative = [f](std::span<const double> x, Side, std::span<double> g) { g[0] = xi_profile(x[0], f).derivative; };
  // The third derivative jumps at the branch midpoint and the second at the tips.
  r.singular_distance = [f](std::span<const double> x) {
    return std::min({std::abs(x[0] - f.xi1()), std::abs(x[0] - f.xi2()), std::abs(x[0] - 0.5 * (f.xi1() + f.xi2()))});
  };
  return r;
}

ad::CustomRule make_lambda_rule(const CrackLocalFrame& f, std::string tag) {
  ad::CustomRule r;
  r.tag = std::move(tag);
  r.arity = 1;
  r.primal = [f](std::span<const double> x, Side s) { return lambda_profile(x[0], f, s).value; };
  r.derivative = [f](std::span<const double> x, Side s, std::span<double> g) {
    g[0] = lambda_profile(x[0], f, s).derivative;
  };
  r.on_jump = [f](std::span<const double> x) { return x[0] == f.eta1(); };
  r.singular_distance = [f](std::span<const double> x) { return std::abs(x[0] - f.eta1()); };
  return r;
}

ad::CustomRule make_enrichment_2d_rule(const CrackLocalFrame& f, std::string tag) {
  ad::CustomRule r;
  r.tag = std::move(tag);
  r.arity = 2;
  r.primal = [f](std::span<const double> x, Side s) { return enrichment_2d({x[0], x[1]}, f, s).value; };
  r.derivative = [f](std::span<const double> x, Side s, std::span<double> g) {
    const Vec2 grad = enrichment_2d({x[0], x[1]}, f, s).gradient;
    g[0] = grad.x();
    g[1] = grad.y();
  };
  r.on_jump = [f](std::span<const double> x) {
    const Vec2 q = f.to_local({x[0], x[1]});
    return q.y() == f.eta1() && q.x() > f.xi1() && q.x() < f.xi2();
  };
  r.singular_distance = [f](std::span<const double> x) {
    const Vec2 q = f.to_local({x[0], x[1]});
    if (q.x() < f.xi1() - f.l0() || q.x() > f.xi2() + f.l0()) return std::numeric_limits<double>::infinity();
    const double mid = 0.5 * (f.xi1() + f.xi2());
    return std::min({std::abs(q.y() - f.eta1()), std::abs(q.x() - mid), std::abs(q.x() - f.xi1()),
                     std::abs(q.x() - f.xi2())});
  };
  return r;
}

}  // namespace xpinn::enrichment
