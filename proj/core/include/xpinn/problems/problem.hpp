#pragma once

#include "xpinn/elasticity/loads.hpp"
#include "xpinn/elasticity/material.hpp"
#include "xpinn/geometry/domain.hpp"
#include "xpinn/quadrature/points.hpp"
#include "xpinn/solver/model.hpp"
#include "xpinn/solver/train.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace xpinn::problems {

struct GridSpec {
  int nx = 101;
  int ny = 101;
};

struct ExportOptions {
  bool fields = true;
  bool history = true;
  bool points = false;
  bool checkpoint = true;
};

struct ProblemSpec {
  std::string name;
  geom::DomainSpec domain;
  elastic::ElasticMaterial material;
  elastic::LoadSpec loads;
  quad::QuadratureConfig quadrature;
  solver::ModelConfig model;
  solver::TrainConfig train;
  GridSpec grid;
  ExportOptions exports;
  std::uint64_t seed = 1;
  bool desk_scale = false;
};

/// Geometry, material, loads, training and grid checks; each violation as a message.
std::vector<std::string> validate(const ProblemSpec& p);

/// bar1d, center_crack, edge_crack_hole, multi_crack, two_crack.
std::vector<std::string> builtin_names();
/// Throws ConfigError for an unknown name. The desk-scale variant shrinks point
/// counts, network depth and epochs to fit a CI budget.
ProblemSpec builtin(const std::string& name, bool desk_scale = false);

nlohmann::json to_json(const ProblemSpec& p);
/// Starts from `builtin` (if named) and applies every other key on top.
/// Throws ConfigError naming the offending field.
ProblemSpec problem_from_json(const nlohmann::json& j);
/// Parses a JSON file; parse errors report line and column.
nlohmann::json read_json_file(const std::string& path);
ProblemSpec load_problem(const std::string& path);

/// FNV-1a of the compact JSON dump; stable across platforms.
std::uint64_t config_hash(const ProblemSpec& p);

/// Validated domain plus the quadrature and boundary points of a spec. Models
/// keep a pointer to `domain`, so a Setup must stay in place while they live.
struct Setup {
  geom::Domain domain;
  elastic::PointSets points;
};

/// Throws ConfigError listing every violation of validate().
Setup prepare(const ProblemSpec& p);
/// Model configuration carrying the spec's seed.
solver::ModelConfig model_config(const ProblemSpec& p);

}  // namespace xpinn::problems
