#include "xpinn/autodiff/rules.hpp"

namespace xpinn::ad {

RuleId RuleRegistry::register_rule(CustomRule rule) {
  if (rule.tag.empty()) throw Error("custom rule needs a non-empty tag");
  if (!rule.primal || !rule.derivative) throw Error("custom rule '" + rule.tag + "' lacks a primal or derivative");
  if (rule.arity == 0) throw Error("custom rule '" + rule.tag + "' has zero arity");
  if (by_tag_.contains(rule.tag)) throw Error("duplicate registration for rule '" + rule.tag + "'");
  const RuleId id = rules_.size();
  by_tag_.emplace(rule.tag, id);
  rules_.push_back(std::move(rule));
  return id;
}

const CustomRule& RuleRegistry::rule(RuleId id) const {
  if (id >= rules_.size()) throw Error("unknown rule id " + std::to_string(id));
  return rules_[id];
}

std::optional<RuleId> RuleRegistry::find(std::string_view tag) const {
  const auto it = by_tag_.find(std::string(tag));
  if (it == by_tag_.end()) return std::nullopt;
  return it->second;
}

void check_side(const CustomRule& rule, std::span<const double> x, Side side) {
  if (side == Side::none && rule.on_jump && rule.on_jump(x)) {
    throw SideRequiredError("rule '" + rule.tag + "' evaluated on its jump locus without a side token");
  }
}

Var apply_rule(const CustomRule& rule, const Var& x, Side side) {
  if (rule.arity != 1) throw Error("rule '" + rule.tag + "': tape evaluation supports unary rules only");
  const double xv = x.value();
  const std::span<const double> xs(&xv, 1);
  check_side(rule, xs, side);
  const double v = rule.primal(xs, side);
  double g = 0.0;
  rule.derivative(xs, side, std::span<double>(&g, 1));
  if (x.is_constant()) return Var(v);
  return x.tape()->unary(OpTag::custom, x, v, g);
}

}  // namespace xpinn::ad
