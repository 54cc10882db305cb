#pragma once

#include "xpinn/solver/energy.hpp"
#include "xpinn/solver/model.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace xpinn::solver {

struct TrainConfig {
  int epochs = 5000;
  double learning_rate = 1e-3;
  double decay_factor = 0.5;
  int decay_every = 2000;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  int snapshot_every = 1;
  bool early_stop = true;
  int window = 500;         ///< epochs above the margin before stopping
  double tolerance = 0.05;  ///< relative margin over the best snapshot energy
  /// Learning-rate spike for instability experiments: from `spike_epoch` on,
  /// the rate is multiplied by `spike_factor`. Negative epoch disables it.
  int spike_epoch = -1;
  double spike_factor = 1.0;
};

std::vector<std::string> validate(const TrainConfig& cfg);

enum class StopReason { completed, diverged, non_finite };
std::string to_string(StopReason r);

struct EpochRecord {
  int epoch = 0;
  double total = 0.0, U = 0.0, V = 0.0, T = 0.0;
};

struct RunHistory {
  std::vector<EpochRecord> records;  ///< energy of the parameters at the start of each epoch
  int best_epoch = -1;               ///< epoch of the best snapshot
  double best_energy = std::numeric_limits<double>::infinity();
  StopReason stop = StopReason::completed;
  int stop_epoch = -1;  ///< epoch at which training stopped early
  std::string message;
};

/// Called after each recorded epoch; returning false stops training.
using EpochCallback = std::function<bool(const EpochRecord&)>;

/// Full-batch Adam over the energy. Gradients of each enriched network come only
/// from its own region by construction of ModelEnergy. The update after the
/// final epoch is skipped, so the model ends at the last recorded energy unless
/// training stops early, in which case the best snapshot is restored (or the
/// last finite one after a non-finite energy).
RunHistory train(XpinnModel& model, ModelEnergy& energy, const TrainConfig& cfg, const EpochCallback& cb = {});

/// CSV with header epoch,total,U,V,T; 17 significant digits.
void write_history_csv(std::ostream& out, const RunHistory& h);

}  // namespace xpinn::solver
