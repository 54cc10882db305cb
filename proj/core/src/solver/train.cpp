#include "xpinn/solver/train.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

namespace xpinn::solver {

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::completed: return "completed";
    case StopReason::diverged: return "diverged";
    case StopReason::non_finite: return "non_finite";
  }
  return "?";
}

std::vector<std::string> validate(const TrainConfig& c) {
  std::vector<std::string> out;
  if (c.epochs < 0) out.emplace_back("train.epochs must be >= 0");
  if (!(c.learning_rate > 0.0)) out.emplace_back("train.learning_rate must be positive");
  if (!(c.decay_factor > 0.0)) out.emplace_back("train.decay_factor must be positive");
  if (c.decay_every < 1) out.emplace_back("train.decay_every must be >= 1");
  if (!(c.beta1 >= 0.0 && c.beta1 < 1.0) || !(c.beta2 >= 0.0 && c.beta2 < 1.0))
    out.emplace_back("train.beta1 and train.beta2 must lie in [0, 1)");
  if (!(c.epsilon > 0.0)) out.emplace_back("train.epsilon must be positive");
  if (c.snapshot_every < 1) out.emplace_back("train.snapshot_every must be >= 1");
  if (c.window < 1) out.emplace_back("train.window must be >= 1");
  if (!(c.tolerance >= 0.0)) out.emplace_back("train.tolerance must be non-negative");
  if (!(c.spike_factor > 0.0)) out.emplace_back("train.spike_factor must be positive");
  return out;
}

namespace {

bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

RunHistory train(XpinnModel& model, ModelEnergy& energy, const TrainConfig& cfg, const EpochCallback& cb) {
  if (const auto v = validate(cfg); !v.empty()) throw ConfigError(v.front());
  RunHistory h;
  const std::size_t n = model.parameter_count();
  std::vector<double> theta = model.parameters();
  std::vector<double> grad(n), m(n, 0.0), s(n, 0.0);
  std::vector<double> best = theta, last_good = theta;
  int above = 0;
  double b1t = 1.0, b2t = 1.0;
  h.records.reserve(static_cast<std::size_t>(cfg.epochs));

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    Terms t;
    bool finite = true;
    try {
      t = energy.evaluate(model, grad);
      finite = std::isfinite(t.total()) && all_finite(grad);
    } catch (const NumericalError& e) {
      finite = false;
      h.message = e.what();
    }
    if (!finite) {
      model.assign_parameters(last_good);
      h.stop = StopReason::non_finite;
      h.stop_epoch = epoch;
      if (h.message.empty()) h.message = "non-finite energy or gradient at epoch " + std::to_string(epoch);
      return h;
    }
    const EpochRecord rec{epoch, t.total(), t.U, t.V, t.T};
    h.records.push_back(rec);

    if (epoch % cfg.snapshot_every == 0) {
      last_good = theta;
      if (rec.total < h.best_energy) {
        h.best_energy = rec.total;
        h.best_epoch = epoch;
        best = theta;
      }
    }
    if (cfg.early_stop && h.best_epoch >= 0) {
      above = rec.total > h.best_energy + cfg.tolerance * std::abs(h.best_energy) ? above + 1 : 0;
      if (above >= cfg.window) {
        model.assign_parameters(best);
        h.stop = StopReason::diverged;
        h.stop_epoch = epoch;
        h.message = "energy stayed above the best snapshot for " + std::to_string(cfg.window) + " epochs";
        return h;
      }
    }
    if (cb && !cb(rec)) break;
    if (epoch + 1 == cfg.epochs) break;

    double lr = cfg.learning_rate * std::pow(cfg.decay_factor, epoch / cfg.decay_every);
    if (cfg.spike_epoch >= 0 && epoch >= cfg.spike_epoch) lr *= cfg.spike_factor;
    b1t *= cfg.beta1;
    b2t *= cfg.beta2;
    const double c1 = 1.0 / (1.0 - b1t), c2 = 1.0 / (1.0 - b2t);
    for (std::size_t i = 0; i < n; ++i) {
      m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * grad[i];
      s[i] = cfg.beta2 * s[i] + (1.0 - cfg.beta2) * grad[i] * grad[i];
      theta[i] -= lr * (m[i] * c1) / (std::sqrt(s[i] * c2) + cfg.epsilon);
    }
    model.assign_parameters(theta);
  }
  return h;
}

void write_history_csv(std::ostream& out, const RunHistory& h) {
  out << std::setprecision(17) << "epoch,total,U,V,T\n";
  for (const auto& r : h.records) out << r.epoch << ',' << r.total << ',' << r.U << ',' << r.V << ',' << r.T << '\n';
}

}  // namespace xpinn::solver
