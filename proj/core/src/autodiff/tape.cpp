#include "xpinn/autodiff/tape.hpp"

#include "xpinn/common.hpp"

#include <cmath>
#include <string>

namespace xpinn::ad {

std::string_view to_string(OpTag tag) {
  switch (tag) {
    case OpTag::input: return "input";
    case OpTag::parameter: return "parameter";
    case OpTag::add: return "add";
    case OpTag::sub: return "sub";
    case OpTag::mul: return "mul";
    case OpTag::div: return "div";
    case OpTag::neg: return "neg";
    case OpTag::tanh: return "tanh";
    case OpTag::exp: return "exp";
    case OpTag::log: return "log";
    case OpTag::sqrt: return "sqrt";
    case OpTag::sin: return "sin";
    case OpTag::cos: return "cos";
    case OpTag::erf: return "erf";
    case OpTag::abs: return "abs";
    case OpTag::custom: return "custom";
  }
  return "unknown";
}

Var Tape::push(const TapeNode& node) {
  const auto index = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back(node);
  return Var(this, index, node.value);
}

Var Tape::parameter(double value) {
  TapeNode n;
  n.op = OpTag::parameter;
  n.value = value;
  n.parameter = static_cast<std::int32_t>(parameter_nodes_.size());
  parameter_nodes_.push_back(static_cast<std::uint32_t>(nodes_.size()));
  return push(n);
}

Var Tape::input(double value) {
  TapeNode n;
  n.op = OpTag::input;
  n.value = value;
  return push(n);
}

Var Tape::unary(OpTag op, const Var& a, double value, double da) {
  if (a.is_constant()) return Var(value);
  TapeNode n;
  n.op = op;
  n.arity = 1;
  n.parents[0] = a.index();
  n.partials[0] = da;
  n.value = value;
  return push(n);
}

Var Tape::binary(OpTag op, const Var& a, const Var& b, double value, double da, double db) {
  if (a.is_constant()) return unary(op, b, value, db);
  if (b.is_constant()) return unary(op, a, value, da);
  TapeNode n;
  n.op = op;
  n.arity = 2;
  n.parents[0] = a.index();
  n.parents[1] = b.index();
  n.partials[0] = da;
  n.partials[1] = db;
  n.value = value;
  return push(n);
}

ParameterGradient Tape::backward(const Var& loss) {
  ParameterGradient grad(parameter_nodes_.size(), 0.0);
  if (loss.is_constant()) return grad;
  if (loss.tape() != this) throw Error("backward: loss belongs to a different tape");

  for (auto& n : nodes_) n.adjoint = 0.0;
  nodes_[loss.index()].adjoint = 1.0;

  for (std::size_t i = loss.index() + 1; i-- > 0;) {
    const TapeNode& n = nodes_[i];
    if (n.adjoint == 0.0) continue;
    if (!std::isfinite(n.adjoint)) {
      throw NumericalError("non-finite adjoint at tape node " + std::to_string(i) + " (" +
                           std::string(to_string(n.op)) + ")");
    }
    for (std::uint8_t p = 0; p < n.arity; ++p) {
      nodes_[n.parents[p]].adjoint += n.partials[p] * n.adjoint;
    }
  }
  for (std::size_t id = 0; id < parameter_nodes_.size(); ++id) {
    grad[id] = nodes_[parameter_nodes_[id]].adjoint;
  }
  return grad;
}

double value_of(const Var& v) { return v.value(); }

namespace {

Tape* tape_of(const Var& a, const Var& b) { return a.tape() != nullptr ? a.tape() : b.tape(); }

}  // namespace

Var operator+(const Var& a, const Var& b) {
  Tape* t = tape_of(a, b);
  const double v = a.value() + b.value();
  if (t == nullptr) return Var(v);
  return t->binary(OpTag::add, a, b, v, 1.0, 1.0);
}

Var operator-(const Var& a, const Var& b) {
  Tape* t = tape_of(a, b);
  const double v = a.value() - b.value();
  if (t == nullptr) return Var(v);
  return t->binary(OpTag::sub, a, b, v, 1.0, -1.0);
}

Var operator*(const Var& a, const Var& b) {
  Tape* t = tape_of(a, b);
  const double v = a.value() * b.value();
  if (t == nullptr) return Var(v);
  return t->binary(OpTag::mul, a, b, v, b.value(), a.value());
}

Var operator/(const Var& a, const Var& b) {
  Tape* t = tape_of(a, b);
  const double v = a.value() / b.value();
  if (t == nullptr) return Var(v);
  return t->binary(OpTag::div, a, b, v, 1.0 / b.value(), -v / b.value());
}

Var operator-(const Var& a) {
  if (a.is_constant()) return Var(-a.value());
  return a.tape()->unary(OpTag::neg, a, -a.value(), -1.0);
}

Var& operator+=(Var& a, const Var& b) { return a = a + b; }
Var& operator-=(Var& a, const Var& b) { return a = a - b; }
Var& operator*=(Var& a, const Var& b) { return a = a * b; }

namespace {

Var apply_unary(OpTag op, const Var& a, double value, double da) {
  if (a.is_constant()) return Var(value);
  return a.tape()->unary(op, a, value, da);
}

}  // namespace

Var tanh(const Var& a) {
  const double t = std::tanh(a.value());
  return apply_unary(OpTag::tanh, a, t, 1.0 - t * t);
}

Var exp(const Var& a) {
  const double e = std::exp(a.value());
  return apply_unary(OpTag::exp, a, e, e);
}

Var log(const Var& a) { return apply_unary(OpTag::log, a, std::log(a.value()), 1.0 / a.value()); }

Var sqrt(const Var& a) {
  const double s = std::sqrt(a.value());
  return apply_unary(OpTag::sqrt, a, s, 0.5 / s);
}

Var sin(const Var& a) { return apply_unary(OpTag::sin, a, std::sin(a.value()), std::cos(a.value())); }

Var cos(const Var& a) { return apply_unary(OpTag::cos, a, std::cos(a.value()), -std::sin(a.value())); }

Var erf(const Var& a) {
  constexpr double two_over_sqrt_pi = 1.1283791670955126;
  const double x = a.value();
  return apply_unary(OpTag::erf, a, std::erf(x), two_over_sqrt_pi * std::exp(-x * x));
}

Var abs(const Var& a) {
  const double x = a.value();
  const double s = x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
  return apply_unary(OpTag::abs, a, std::abs(x), s);
}

}  // namespace xpinn::ad
