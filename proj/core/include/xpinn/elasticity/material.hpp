#pragma once

#include "xpinn/common.hpp"

#include <array>
#include <string>

namespace xpinn::elastic {

enum class Mode { plane_stress, plane_strain, bar_1d };
std::string to_string(Mode m);
Mode parse_mode(const std::string& s);

/// Isotropic linear material. lambda() is the effective first Lame constant of
/// the mode: plane stress uses 2 lambda mu / (lambda + 2 mu).
struct ElasticMaterial {
  double E = 1.0;
  double nu = 0.3;
  Mode mode = Mode::plane_stress;
  double area = 1.0;  ///< cross-section of a bar; multiplies 1D domain integrals

  double lambda() const;
  double mu() const;
  /// 3D Lame constant lambda regardless of mode.
  double lambda_3d() const;
};

/// Throws ConfigError unless E > 0, -1 < nu < 0.5 and area > 0.
void validate(const ElasticMaterial& m);

struct StressState {
  Matrix2 sigma = Matrix2::Zero();
  Matrix2 epsilon = Matrix2::Zero();
};

/// Symmetric part of the displacement gradient, grad(i, j) = du_i/dx_j.
Matrix2 strain(const Matrix2& grad);
/// sigma = lambda tr(eps) I + 2 mu eps; in 1D sigma11 = E eps11.
Matrix2 stress(const Matrix2& eps, const ElasticMaterial& m);
StressState stress_state(const Matrix2& grad, const ElasticMaterial& m);
/// Plane strain includes sigma33 = nu (sigma11 + sigma22); 1D returns |sigma11|.
double von_mises(const Matrix2& sigma, const ElasticMaterial& m);

/// Strain energy density 1/2 sigma : eps on any scalar type (times area in 1D).
template <class S>
S strain_energy_density(const std::array<std::array<S, 2>, 2>& g, const ElasticMaterial& m) {
  if (m.mode == Mode::bar_1d) return 0.5 * m.E * m.area * g[0][0] * g[0][0];
  const S e12 = 0.5 * (g[0][1] + g[1][0]);
  const S tr = g[0][0] + g[1][1];
  return 0.5 * m.lambda() * tr * tr + m.mu() * (g[0][0] * g[0][0] + g[1][1] * g[1][1] + 2.0 * e12 * e12);
}

}  // namespace xpinn::elastic
