#pragma once

// X-PINN displacement field
//   u(x) = N_C(x) + D(x) N_D(x) [+ sum_beta E_beta(x) N_S,beta(x)]
// where D is the enrichment of the crack whose region holds x. Scheme 1 shares
// one N_D between all cracks, scheme 2 binds one N_D per crack.

#include "xpinn/autodiff/dual.hpp"
#include "xpinn/common.hpp"
#include "xpinn/enrichment/enrichment.hpp"
#include "xpinn/geometry/domain.hpp"
#include "xpinn/network/mlp.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace xpinn::solver {

enum class Scheme { shared = 1, per_crack = 2 };
Scheme parse_scheme(int s);

/// per_direction: one single-output net per displacement component.
/// combined: one net with one output per component.
enum class OutputLayout { per_direction, combined };
std::string to_string(OutputLayout l);
OutputLayout parse_layout(const std::string& s);

enum class Enrichment1d { sawtooth, heaviside };
std::string to_string(Enrichment1d e);
Enrichment1d parse_enrichment_1d(const std::string& s);

struct ModelConfig {
  Scheme scheme = Scheme::per_crack;
  OutputLayout layout = OutputLayout::per_direction;
  nn::Architecture standard{2, 20, nn::Activation::tanh, 0};
  nn::Architecture enriched{2, 10, nn::Activation::tanh, 0};
  nn::Architecture singular{2, 10, nn::Activation::tanh, 0};
  bool singular_enabled = false;
  double singular_radius = 0.0;  ///< 0 selects the crack's l0
  Enrichment1d enrichment_1d = Enrichment1d::sawtooth;
  int sawtooth_order = 2;
  std::uint64_t seed = 0;
};

/// A vector field R^dim -> R^dim made of one or more perceptrons.
struct FieldNet {
  std::vector<nn::Mlp> nets;
  OutputLayout layout = OutputLayout::per_direction;
  int outputs = 0;  ///< total outputs
  std::size_t parameter_count() const;
};

/// Contiguous parameter range of one network in the model's flat vector.
struct ParameterBlock {
  std::string name;  ///< e.g. "continuous.u", "enriched.1.v"
  std::size_t offset = 0;
  std::size_t count = 0;
};

/// Enrichment value and gradient at a point.
struct EnrichmentSample {
  double value = 0.0;
  Vec2 gradient = Vec2::Zero();
};

class XpinnModel {
 public:
  XpinnModel(const geom::Domain& domain, const ModelConfig& cfg);

  int dimension() const { return dim_; }
  const ModelConfig& config() const { return cfg_; }
  std::size_t crack_count() const { return crack_count_; }

  FieldNet& continuous() { return continuous_; }
  const FieldNet& continuous() const { return continuous_; }
  std::vector<FieldNet>& enriched() { return enriched_; }
  const std::vector<FieldNet>& enriched() const { return enriched_; }
  std::vector<FieldNet>& singular() { return singular_; }
  const std::vector<FieldNet>& singular() const { return singular_; }

  /// Index into enriched() (and singular()) serving crack index c; throws if unbound.
  std::size_t enriched_net_for(int crack) const;

  EnrichmentSample enrichment(int crack, const Vec2& p, Side side) const;
  /// Singular channels E_1..E_4 for a crack (2D only).
  enrichment::SingularChannels singular_channels(int crack, const Vec2& p, Side side) const;

  std::size_t parameter_count() const;
  std::vector<double> parameters() const;
  void assign_parameters(std::span<const double> theta);
  /// Networks in flat order: continuous, enriched, singular.
  std::vector<ParameterBlock> blocks() const;
  std::vector<const nn::Mlp*> networks() const;
  std::vector<nn::Mlp*> networks();
  std::vector<std::string> network_names() const;

  const geom::Domain& domain() const { return *domain_; }

 private:
  const geom::Domain* domain_;  ///< owned by the caller, must outlive the model
  ModelConfig cfg_;
  int dim_;
  std::size_t crack_count_;
  FieldNet continuous_;
  std::vector<FieldNet> enriched_;
  std::vector<FieldNet> singular_;
};

/// Displacement and jacobian at a point, jacobian(i, j) = du_i/dx_j. The tag
/// selects the enrichment and its side; throws on an unbound crack.
struct DisplacementSample {
  Vec2 u = Vec2::Zero();
  Matrix2 jacobian = Matrix2::Zero();
};
DisplacementSample displacement(const XpinnModel& model, const Vec2& p, const geom::RegionTag& tag);

/// Generic path on Dual<T, 2> inputs (T = double or ad::Var): evaluates the
/// composition with model parameters supplied as T in the flat layout.
template <class T>
std::array<ad::Dual<T, 2>, 2> displacement_dual(const XpinnModel& model, std::span<const T> theta, const Vec2& p,
                                                const geom::RegionTag& tag);

}  // namespace xpinn::solver

#include "xpinn/solver/model_generic.hpp"
