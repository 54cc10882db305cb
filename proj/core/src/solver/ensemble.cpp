#include "xpinn/solver/ensemble.hpp"

#include "xpinn/util/seed.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace xpinn::solver {

std::uint64_t derive_seed(std::uint64_t base, int run) {
  return util::splitmix64(base ^ util::splitmix64(static_cast<std::uint64_t>(run) + 1));
}

EnsembleStats ensemble_stats(const std::vector<RunHistory>& runs) {
  EnsembleStats s;
  std::size_t longest = 0;
  for (const auto& r : runs) longest = std::max(longest, r.records.size());
  for (std::size_t e = 0; e < longest; ++e) {
    // Shifted by the first value so identical runs give exactly zero spread.
    double shift = 0.0, sum = 0.0, sq = 0.0;
    int count = 0;
    for (const auto& r : runs)
      if (e < r.records.size()) {
        if (count == 0) shift = r.records[e].total;
        const double d = r.records[e].total - shift;
        sum += d;
        sq += d * d;
        ++count;
      }
    const double dm = sum / count;
    const double mean = shift + dm;
    const double var = std::max(0.0, sq / count - dm * dm);
    s.epoch.push_back(static_cast<int>(e));
    s.mean.push_back(mean);
    s.std.push_back(std::sqrt(var));
    s.count.push_back(count);
  }
  return s;
}

void write_ensemble_csv(std::ostream& out, const EnsembleStats& s) {
  out << std::setprecision(17) << "epoch,mean,std\n";
  for (std::size_t i = 0; i < s.epoch.size(); ++i) out << s.epoch[i] << ',' << s.mean[i] << ',' << s.std[i] << '\n';
}

EnsembleResult run_ensemble(const EnsembleJob& job, int runs, std::uint64_t base_seed, bool identical_seeds) {
  if (runs < 1) throw ConfigError("runs must be >= 1");
  if (job.domain == nullptr || job.points == nullptr) throw Error("ensemble job without domain or points");
  EnsembleResult out;
  for (int r = 0; r < runs; ++r) {
    ModelConfig mc = job.model;
    mc.seed = identical_seeds ? base_seed : derive_seed(base_seed, r);
    try {
      XpinnModel model(*job.domain, mc);
      ModelEnergy energy(model, *job.points, job.loads, job.material);
      out.histories.push_back(train(model, energy, job.train));
      out.seeds.push_back(mc.seed);
    } catch (const Error& e) {
      out.failures.push_back("run " + std::to_string(r) + ": " + e.what());
    }
  }
  out.stats = ensemble_stats(out.histories);
  return out;
}

}  // namespace xpinn::solver
