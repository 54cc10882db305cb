#pragma once

// Hand-registered derivative rules for non-smooth primitives (enrichment
// functions). A rule pairs a primal with its analytic gradient and declares
// the loci where the primal jumps; evaluating there requires a side token.

#include "xpinn/autodiff/dual.hpp"
#include "xpinn/autodiff/tape.hpp"
#include "xpinn/common.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace xpinn::ad {

struct CustomRule {
  std::string tag;
  std::size_t arity = 1;
  std::function<double(std::span<const double>, Side)> primal;
  /// Writes the gradient (length = arity) of the primal.
  std::function<void(std::span<const double>, Side, std::span<double>)> derivative;
  /// True on a jump locus; empty means the primal is continuous everywhere.
  std::function<bool(std::span<const double>)> on_jump;
  /// Distance to the nearest jump or kink locus; used to keep finite-difference
  /// checks away from non-smooth points. Empty means smooth everywhere.
  std::function<double(std::span<const double>)> singular_distance;
};

using RuleId = std::size_t;

class RuleRegistry {
 public:
  /// Throws Error on a duplicate tag or a rule without primal/derivative handles.
  RuleId register_rule(CustomRule rule);

  const CustomRule& rule(RuleId id) const;
  std::optional<RuleId> find(std::string_view tag) const;
  std::size_t size() const { return rules_.size(); }

 private:
  std::vector<CustomRule> rules_;
  std::unordered_map<std::string, RuleId> by_tag_;
};

/// Throws SideRequiredError if `x` sits on a jump locus of `rule` and no side is given.
void check_side(const CustomRule& rule, std::span<const double> x, Side side);

template <std::size_t N>
Dual<double, N> apply_rule(const CustomRule& rule, std::span<const Dual<double, N>> args, Side side) {
  if (args.size() != rule.arity) throw Error("rule '" + rule.tag + "': wrong number of arguments");
  std::array<double, 8> x{};
  std::array<double, 8> g{};
  if (rule.arity > x.size()) throw Error("rule '" + rule.tag + "': arity above 8 is not supported");
  for (std::size_t i = 0; i < rule.arity; ++i) x[i] = args[i].value;
  const std::span<const double> xs(x.data(), rule.arity);
  check_side(rule, xs, side);
  Dual<double, N> r;
  r.value = rule.primal(xs, side);
  rule.derivative(xs, side, std::span<double>(g.data(), rule.arity));
  for (std::size_t i = 0; i < rule.arity; ++i)
    for (std::size_t k = 0; k < N; ++k) r.partials[k] += g[i] * args[i].partials[k];
  return r;
}

template <std::size_t N>
Dual<double, N> apply_rule(const CustomRule& rule, const Dual<double, N>& arg, Side side = Side::none) {
  return apply_rule<N>(rule, std::span<const Dual<double, N>>(&arg, 1), side);
}

/// Unary rule on the reverse tape.
Var apply_rule(const CustomRule& rule, const Var& x, Side side = Side::none);

}  // namespace xpinn::ad
