#pragma once

// Scalar reverse-mode tape.
//
// Every arithmetic operation on a non-constant Var appends one node holding
// the local partials to its (at most two) parents. Nodes are appended in
// evaluation order, so the node vector is already topologically sorted and
// backward() is a single reverse sweep.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace xpinn::ad {

enum class OpTag : std::uint8_t {
  input,
  parameter,
  add,
  sub,
  mul,
  div,
  neg,
  tanh,
  exp,
  log,
  sqrt,
  sin,
  cos,
  erf,
  abs,
  custom,
};

std::string_view to_string(OpTag tag);

struct TapeNode {
  OpTag op = OpTag::input;
  std::uint8_t arity = 0;
  std::uint32_t parents[2] = {0, 0};
  double partials[2] = {0.0, 0.0};
  double value = 0.0;
  double adjoint = 0.0;
  std::int32_t parameter = -1;  ///< parameter id for trainable leaves
};

class Tape;

/// Handle to a tape node. A default or double-constructed Var is a constant
/// that lives on no tape.
class Var {
 public:
  Var() = default;
  Var(double constant) : value_(constant) {}  // NOLINT: constants convert implicitly

  double value() const { return value_; }
  bool is_constant() const { return tape_ == nullptr; }
  Tape* tape() const { return tape_; }
  std::uint32_t index() const { return index_; }

 private:
  friend class Tape;
  Var(Tape* tape, std::uint32_t index, double value) : tape_(tape), index_(index), value_(value) {}

  Tape* tape_ = nullptr;
  std::uint32_t index_ = 0;
  double value_ = 0.0;
};

/// Gradient of a scalar with respect to every registered parameter, indexed by parameter id.
using ParameterGradient = std::vector<double>;

class Tape {
 public:
  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  /// Trainable leaf; ids are assigned 0, 1, 2, ... in registration order.
  Var parameter(double value);
  /// Non-trainable leaf.
  Var input(double value);

  Var unary(OpTag op, const Var& a, double value, double da);
  Var binary(OpTag op, const Var& a, const Var& b, double value, double da, double db);

  /// Reverse sweep from `loss`. Unreachable parameters get zero.
  /// Throws NumericalError naming the node tag if an adjoint becomes non-finite.
  ParameterGradient backward(const Var& loss);

  std::size_t size() const { return nodes_.size(); }
  std::size_t parameter_count() const { return parameter_nodes_.size(); }
  const TapeNode& node(std::size_t i) const { return nodes_[i]; }
  void reserve(std::size_t n) { nodes_.reserve(n); }

 private:
  Var push(const TapeNode& node);

  std::vector<TapeNode> nodes_;
  std::vector<std::uint32_t> parameter_nodes_;
};

double value_of(const Var& v);

Var operator+(const Var& a, const Var& b);
Var operator-(const Var& a, const Var& b);
Var operator*(const Var& a, const Var& b);
Var operator/(const Var& a, const Var& b);
Var operator-(const Var& a);
Var& operator+=(Var& a, const Var& b);
Var& operator-=(Var& a, const Var& b);
Var& operator*=(Var& a, const Var& b);

inline bool operator<(const Var& a, const Var& b) { return a.value() < b.value(); }
inline bool operator>(const Var& a, const Var& b) { return a.value() > b.value(); }
inline bool operator<=(const Var& a, const Var& b) { return a.value() <= b.value(); }
inline bool operator>=(const Var& a, const Var& b) { return a.value() >= b.value(); }

Var tanh(const Var& a);
Var exp(const Var& a);
Var log(const Var& a);
Var sqrt(const Var& a);
Var sin(const Var& a);
Var cos(const Var& a);
Var erf(const Var& a);
/// Subgradient sign(a) with 0 at a = 0.
Var abs(const Var& a);

}  // namespace xpinn::ad
