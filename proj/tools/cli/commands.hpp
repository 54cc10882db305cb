#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace xpinn::cli {

struct Options {
  std::vector<std::string> configs;  ///< file paths or builtin names
  std::string out = "out";
  std::string checkpoint;  ///< eval: defaults to <out>/checkpoint.bin
  int runs = 5;
  bool desk_scale = false;
  bool export_points = false;
  bool quiet = false;
  std::optional<int> scheme;
  std::optional<std::uint64_t> seed;
  std::optional<int> epochs;
  std::optional<int> grid;
};

// Exit codes: 0 converged, 2 stopped early on divergence, 1 error.
int cmd_solve(const Options& o);
int cmd_eval(const Options& o);
int cmd_ensemble(const Options& o);

}  // namespace xpinn::cli
