#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace xpinn {

using Vec2 = Eigen::Vector2d;
using Matrix2 = Eigen::Matrix2d;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Point outside the material domain (outside the bounding box or inside a hole).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation on a jump locus without a side token.
class SideRequiredError : public Error {
 public:
  using Error::Error;
};

/// NaN or Inf met during evaluation or accumulation.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Derivative requested at a declared singular point.
class SingularError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Side of a jump locus. Region tags use `none` for points away from any crack.
enum class Side : std::int8_t { negative = -1, none = 0, positive = 1 };

constexpr double sign_of(Side s) { return static_cast<double>(static_cast<std::int8_t>(s)); }

}  // namespace xpinn
