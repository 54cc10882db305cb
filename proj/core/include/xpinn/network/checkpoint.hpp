#pragma once

// Parameter snapshot file: one line of JSON describing the architectures,
// followed by the raw little-endian float64 parameters of every network in
// order (each network in Mlp::parameters() layout).

#include "xpinn/network/mlp.hpp"

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace xpinn::nn {

struct NamedNetwork {
  std::string name;
  Mlp net;
};

struct Checkpoint {
  std::vector<NamedNetwork> networks;
  nlohmann::json meta = nlohmann::json::object();
};

void write_checkpoint(std::ostream& os, const Checkpoint& cp);
Checkpoint read_checkpoint(std::istream& is);

void save_checkpoint(const std::string& path, const Checkpoint& cp);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace xpinn::nn
