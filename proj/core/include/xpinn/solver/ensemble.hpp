#pragma once

#include "xpinn/elasticity/loads.hpp"
#include "xpinn/solver/train.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace xpinn::solver {

/// Seed of run `run` derived from the base seed.
std::uint64_t derive_seed(std::uint64_t base, int run);

/// Pointwise statistics over the runs that reached each epoch; std is the population value.
struct EnsembleStats {
  std::vector<int> epoch;
  std::vector<double> mean;
  std::vector<double> std;
  std::vector<int> count;
};

EnsembleStats ensemble_stats(const std::vector<RunHistory>& runs);

/// CSV with header epoch,mean,std.
void write_ensemble_csv(std::ostream& out, const EnsembleStats& s);

struct EnsembleResult {
  EnsembleStats stats;
  std::vector<RunHistory> histories;  ///< successful runs only
  std::vector<std::uint64_t> seeds;   ///< seeds of the successful runs
  std::vector<std::string> failures;  ///< one message per failed run
};

struct EnsembleJob {
  const geom::Domain* domain = nullptr;
  ModelConfig model;
  const elastic::PointSets* points = nullptr;
  elastic::LoadSpec loads;
  elastic::ElasticMaterial material;
  TrainConfig train;
};

/// Runs `runs` independent trainings. With `identical_seeds` every run uses the
/// base seed itself. A run that throws is recorded as a failure and excluded.
EnsembleResult run_ensemble(const EnsembleJob& job, int runs, std::uint64_t base_seed, bool identical_seeds = false);

}  // namespace xpinn::solver
