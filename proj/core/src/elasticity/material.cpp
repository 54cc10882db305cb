#include "xpinn/elasticity/material.hpp"

#include <cmath>

namespace xpinn::elastic {

std::string to_string(Mode m) {
  switch (m) {
    case Mode::plane_stress: return "plane_stress";
    case Mode::plane_strain: return "plane_strain";
    case Mode::bar_1d: return "bar_1d";
  }
  return "?";
}

Mode parse_mode(const std::string& s) {
  if (s == "plane_stress") return Mode::plane_stress;
  if (s == "plane_strain") return Mode::plane_strain;
  if (s == "bar_1d") return Mode::bar_1d;
  throw ConfigError("unknown material mode '" + s + "' (expected plane_stress, plane_strain or bar_1d)");
}

double ElasticMaterial::lambda_3d() const { return E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu)); }

double ElasticMaterial::mu() const { return E / (2.0 * (1.0 + nu)); }

double ElasticMaterial::lambda() const {
  const double l = lambda_3d();
  if (mode == Mode::plane_stress) return 2.0 * l * mu() / (l + 2.0 * mu());
  return l;
}

void validate(const ElasticMaterial& m) {
  if (!(m.E > 0.0)) throw ConfigError("material.E must be positive");
  if (!(m.nu > -1.0 && m.nu < 0.5)) throw ConfigError("material.nu must lie in (-1, 0.5)");
  if (!(m.area > 0.0)) throw ConfigError("material.area must be positive");
}

Matrix2 strain(const Matrix2& g) { return 0.5 * (g + g.transpose()); }

Matrix2 stress(const Matrix2& eps, const ElasticMaterial& m) {
  if (m.mode == Mode::bar_1d) {
    Matrix2 s = Matrix2::Zero();
    s(0, 0) = m.E * eps(0, 0);
    return s;
  }
  return m.lambda() * eps.trace() * Matrix2::Identity() + 2.0 * m.mu() * eps;
}

StressState stress_state(const Matrix2& grad, const ElasticMaterial& m) {
  StressState s;
  s.epsilon = strain(grad);
  s.sigma = stress(s.epsilon, m);
  return s;
}

double von_mises(const Matrix2& s, const ElasticMaterial& m) {
  const double s11 = s(0, 0), s22 = s(1, 1), s12 = 0.5 * (s(0, 1) + s(1, 0));
  switch (m.mode) {
    case Mode::bar_1d: return std::abs(s11);
    case Mode::plane_stress: return std::sqrt(s11 * s11 - s11 * s22 + s22 * s22 + 3.0 * s12 * s12);
    case Mode::plane_strain: {
      const double s33 = m.nu * (s11 + s22);
      return std::sqrt(0.5 * ((s11 - s22) * (s11 - s22) + (s22 - s33) * (s22 - s33) + (s33 - s11) * (s33 - s11)) +
                       3.0 * s12 * s12);
    }
  }
  return 0.0;
}

}  // namespace xpinn::elastic
