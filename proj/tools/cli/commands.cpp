#include "commands.hpp"

#include "xpinn/network/checkpoint.hpp"
#include "xpinn/problems/problem.hpp"
#include "xpinn/solver/ensemble.hpp"
#include "xpinn/solver/fields.hpp"
#include "xpinn/solver/train.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace xpinn::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kManifestVersion = 1;

std::string hex(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << v;
  return s.str();
}

problems::ProblemSpec resolve(const std::string& config, const Options& o) {
  problems::ProblemSpec p;
  if (fs::exists(config)) {
    json j = problems::read_json_file(config);
    // A manifest from an earlier run carries the full config.
    if (j.is_object() && j.contains("manifest_version") && j.contains("config")) j = j.at("config");
    if (o.desk_scale && j.is_object()) j["desk_scale"] = true;
    try {
      p = problems::problem_from_json(j);
    } catch (const ConfigError& e) {
      throw ConfigError(config + ": " + e.what());
    }
  } else {
    const auto names = problems::builtin_names();
    if (std::find(names.begin(), names.end(), config) == names.end())
      throw ConfigError("'" + config + "' is neither a config file nor a builtin problem");
    p = problems::builtin(config, o.desk_scale);
  }
  if (o.scheme) {
    try {
      p.model.scheme = solver::parse_scheme(*o.scheme);
    } catch (const Error& e) {
      throw ConfigError(std::string("--scheme: ") + e.what());
    }
  }
  if (o.seed) p.seed = *o.seed;
  if (o.epochs) p.train.epochs = *o.epochs;
  if (o.grid) {
    p.grid.nx = *o.grid;
    p.grid.ny = p.domain.dimension == 1 ? 1 : *o.grid;
  }
  if (o.export_points) p.exports.points = true;
  return p;
}

void prepare_out(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path probe = fs::path(dir) / ".write_test";
  std::ofstream f(probe);
  if (ec || !f) throw ConfigError("output directory '" + dir + "' is not writable");
  f.close();
  fs::remove(probe, ec);
}

template <class F>
void write_file(const fs::path& path, F&& body) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write '" + path.string() + "'");
  body(f);
  if (!f) throw Error("write failed for '" + path.string() + "'");
}

void write_fields(const fs::path& dir, const solver::XpinnModel& model, const problems::ProblemSpec& p) {
  const auto table = solver::evaluate_fields(model, p.material, p.grid.nx, p.grid.ny);
  write_file(dir / "fields.csv", [&](std::ostream& f) { solver::write_fields_csv(f, table); });
  write_file(dir / "fields.vtk", [&](std::ostream& f) { solver::write_fields_vtk(f, table); });
}

nn::Checkpoint make_checkpoint(const solver::XpinnModel& model, const problems::ProblemSpec& p) {
  nn::Checkpoint cp;
  const auto names = model.network_names();
  const auto nets = model.networks();
  for (std::size_t i = 0; i < nets.size(); ++i) cp.networks.push_back({names[i], *nets[i]});
  cp.meta = {{"problem", p.name}, {"seed", p.seed}, {"config_hash", hex(problems::config_hash(p))}};
  return cp;
}

void load_into(solver::XpinnModel& model, const nn::Checkpoint& cp) {
  const auto names = model.network_names();
  const auto nets = model.networks();
  if (cp.networks.size() != nets.size())
    throw ConfigError("checkpoint holds " + std::to_string(cp.networks.size()) + " networks, config builds " +
                      std::to_string(nets.size()));
  std::vector<double> theta;
  for (std::size_t i = 0; i < nets.size(); ++i) {
    const auto& n = cp.networks[i];
    if (n.name != names[i] || n.net.layer_sizes() != nets[i]->layer_sizes() ||
        n.net.activation() != nets[i]->activation())
      throw ConfigError("checkpoint network '" + n.name + "' does not match the config architecture of '" +
                        names[i] + "'");
    const auto w = n.net.parameters();
    theta.insert(theta.end(), w.begin(), w.end());
  }
  model.assign_parameters(theta);
}

json base_manifest(const problems::ProblemSpec& p, const std::string& command) {
  return {{"manifest_version", kManifestVersion},
          {"command", command},
          {"problem", p.name},
          {"config_hash", hex(problems::config_hash(p))},
          {"seed", p.seed},
          {"config", problems::to_json(p)}};
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

solver::EpochCallback progress(bool quiet, int epochs) {
  if (quiet) return {};
  const int every = std::max(1, epochs / 10);
  return [every](const solver::EpochRecord& r) {
    if (r.epoch % every == 0)
      std::cerr << "epoch " << r.epoch << "  energy " << std::setprecision(8) << r.total << '\n';
    return true;
  };
}

int run_guarded(const char* what, int (*body)(const Options&), const Options& o) {
  try {
    return body(o);
  } catch (const ConfigError& e) {
    std::cerr << "xpinn " << what << ": configuration error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "xpinn " << what << ": " << e.what() << '\n';
  }
  return 1;
}

int solve_impl(const Options& o) {
  if (o.configs.size() != 1) throw ConfigError("solve takes exactly one --config");
  const auto p = resolve(o.configs.front(), o);
  prepare_out(o.out);
  const fs::path dir(o.out);
  const auto setup = problems::prepare(p);
  solver::XpinnModel model(setup.domain, problems::model_config(p));
  solver::ModelEnergy energy(model, setup.points, p.loads, p.material);
  if (p.exports.points)
    write_file(dir / "points.csv", [&](std::ostream& f) { quad::write_points_csv(f, setup.points.domain); });

  const auto h = solver::train(model, energy, p.train, progress(o.quiet, p.train.epochs));

  if (p.exports.history) write_file(dir / "history.csv", [&](std::ostream& f) { solver::write_history_csv(f, h); });
  if (p.exports.fields) write_fields(dir, model, p);
  if (p.exports.checkpoint) nn::save_checkpoint((dir / "checkpoint.bin").string(), make_checkpoint(model, p));

  json m = base_manifest(p, "solve");
  m["quadrature_points"] = setup.points.domain.size();
  m["boundary_points"] = setup.points.size() - setup.points.domain.size();
  m["parameters"] = model.parameter_count();
  m["epochs_run"] = h.records.size();
  m["final_energy"] = h.records.empty() ? json(nullptr) : finite_or_null(h.records.back().total);
  m["best_energy"] = finite_or_null(h.best_energy);
  m["best_epoch"] = h.best_epoch;
  m["stop_reason"] = solver::to_string(h.stop);
  m["stop_epoch"] = h.stop_epoch;
  m["message"] = h.message;
  m["failures"] = json::array();
  write_file(dir / "manifest.json", [&](std::ostream& f) { f << std::setw(2) << m << '\n'; });

  if (!o.quiet) {
    std::cerr << "stop: " << solver::to_string(h.stop) << ", best energy " << std::setprecision(10) << h.best_energy
              << " at epoch " << h.best_epoch << '\n';
  }
  switch (h.stop) {
    case solver::StopReason::completed: return 0;
    case solver::StopReason::diverged: return 2;
    case solver::StopReason::non_finite: return 1;
  }
  return 1;
}

int eval_impl(const Options& o) {
  if (o.configs.size() != 1) throw ConfigError("eval takes exactly one --config");
  const auto p = resolve(o.configs.front(), o);
  prepare_out(o.out);
  const fs::path dir(o.out);
  const std::string ck = o.checkpoint.empty() ? (dir / "checkpoint.bin").string() : o.checkpoint;
  const auto setup = problems::prepare(p);
  solver::XpinnModel model(setup.domain, problems::model_config(p));
  load_into(model, nn::load_checkpoint(ck));
  write_fields(dir, model, p);
  if (p.exports.points)
    write_file(dir / "points.csv", [&](std::ostream& f) { quad::write_points_csv(f, setup.points.domain); });
  json m = base_manifest(p, "eval");
  m["checkpoint"] = ck;
  m["failures"] = json::array();
  write_file(dir / "eval_manifest.json", [&](std::ostream& f) { f << std::setw(2) << m << '\n'; });
  return 0;
}

int ensemble_impl(const Options& o) {
  if (o.configs.empty()) throw ConfigError("ensemble needs at least one --config");
  if (o.runs < 1) throw ConfigError("--runs must be >= 1");
  prepare_out(o.out);
  int failed_configs = 0;
  for (std::size_t c = 0; c < o.configs.size(); ++c) {
    const auto p = resolve(o.configs[c], o);
    // Several configs (e.g. CTM against UDIPM) each get a subdirectory.
    const fs::path dir = o.configs.size() == 1 ? fs::path(o.out)
                                               : fs::path(o.out) / (std::to_string(c) + "_" + p.name);
    prepare_out(dir.string());
    const auto setup = problems::prepare(p);
    solver::EnsembleJob job{&setup.domain, problems::model_config(p), &setup.points, p.loads, p.material, p.train};
    const auto r = solver::run_ensemble(job, o.runs, p.seed);
    write_file(dir / "ensemble.csv", [&](std::ostream& f) { solver::write_ensemble_csv(f, r.stats); });
    write_file(dir / "runs.csv", [&](std::ostream& f) {
      f << std::setprecision(17) << "run,seed,best_energy,best_epoch,final_energy,stop\n";
      for (std::size_t i = 0; i < r.histories.size(); ++i) {
        const auto& h = r.histories[i];
        f << i << ',' << r.seeds[i] << ',' << h.best_energy << ',' << h.best_epoch << ','
          << (h.records.empty() ? NAN : h.records.back().total) << ',' << solver::to_string(h.stop) << '\n';
      }
    });
    json m = base_manifest(p, "ensemble");
    m["runs"] = o.runs;
    m["seeds"] = r.seeds;
    m["failures"] = r.failures;
    json stops = json::array();
    for (const auto& h : r.histories) stops.push_back(solver::to_string(h.stop));
    m["stop_reasons"] = stops;
    write_file(dir / "manifest.json", [&](std::ostream& f) { f << std::setw(2) << m << '\n'; });
    for (const auto& f : r.failures) std::cerr << "xpinn ensemble: " << f << '\n';
    if (r.histories.empty()) ++failed_configs;
  }
  return failed_configs == 0 ? 0 : 1;
}

}  // namespace

int cmd_solve(const Options& o) { return run_guarded("solve", solve_impl, o); }
int cmd_eval(const Options& o) { return run_guarded("eval", eval_impl, o); }
int cmd_ensemble(const Options& o) { return run_guarded("ensemble", ensemble_impl, o); }

}  // namespace xpinn::cli
