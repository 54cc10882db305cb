#include "commands.hpp"

#include <CLI11.hpp>

int main(int argc, char** argv) {
  using xpinn::cli::Options;
  CLI::App app{"xpinn: enriched energy-based PINN solver for cracked elastic bodies"};
  app.require_subcommand(1);
  Options o;

  const auto common = [&o](CLI::App* sub) {
    sub->add_option("--config", o.configs, "JSON config file, manifest, or builtin problem name")->required();
    sub->add_option("--out", o.out, "output directory");
    sub->add_flag("--desk-scale", o.desk_scale, "use the reduced desk-scale variant of a builtin");
    sub->add_option("--scheme", o.scheme, "1: shared enriched network, 2: one per crack")->check(CLI::IsMember({1, 2}));
    sub->add_option("--seed", o.seed, "base seed");
    sub->add_option("--epochs", o.epochs, "override the epoch count")->check(CLI::NonNegativeNumber);
    sub->add_option("--grid", o.grid, "field export resolution per axis")->check(CLI::Range(2, 100000));
    sub->add_flag("--export-points", o.export_points, "write the quadrature points to points.csv");
    sub->add_flag("--quiet", o.quiet, "no progress output");
  };

  auto* solve = app.add_subcommand("solve", "train a model and export history, fields, checkpoint, manifest");
  common(solve);
  auto* eval = app.add_subcommand("eval", "export fields from a checkpoint without training");
  common(eval);
  eval->add_option("--checkpoint", o.checkpoint, "checkpoint file (default <out>/checkpoint.bin)");
  auto* ensemble = app.add_subcommand("ensemble", "seeded runs and mean/std energy curves");
  common(ensemble);
  ensemble->add_option("--runs", o.runs, "number of runs")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (*solve) return xpinn::cli::cmd_solve(o);
  if (*eval) return xpinn::cli::cmd_eval(o);
  return xpinn::cli::cmd_ensemble(o);
}
