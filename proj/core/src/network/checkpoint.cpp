#include "xpinn/network/checkpoint.hpp"

#include "xpinn/common.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace xpinn::nn {

namespace {

constexpr const char* kFormat = "xpinn-checkpoint";
constexpr int kVersion = 1;

void write_le(std::ostream& os, double v) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  unsigned char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xffu);
  os.write(reinterpret_cast<const char*>(bytes), 8);
}

double read_le(std::istream& is) {
  unsigned char bytes[8];
  if (!is.read(reinterpret_cast<char*>(bytes), 8)) throw Error("checkpoint: truncated parameter block");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

}  // namespace

void write_checkpoint(std::ostream& os, const Checkpoint& cp) {
  nlohmann::json header;
  header["format"] = kFormat;
  header["version"] = kVersion;
  header["dtype"] = "float64-le";
  header["meta"] = cp.meta;
  auto& nets = header["networks"] = nlohmann::json::array();
  for (const auto& n : cp.networks) {
    nets.push_back({{"name", n.name},
                    {"sizes", n.net.layer_sizes()},
                    {"activation", std::string(to_string(n.net.activation()))},
                    {"parameters", n.net.parameter_count()}});
  }
  os << header.dump() << '\n';
  for (const auto& n : cp.networks)
    for (double v : n.net.parameters()) write_le(os, v);
  if (!os) throw Error("checkpoint: write failed");
}

Checkpoint read_checkpoint(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error("checkpoint: missing header");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("checkpoint: malformed header: ") + e.what());
  }
  if (header.value("format", "") != kFormat) throw Error("checkpoint: not an xpinn checkpoint");
  if (header.value("version", 0) != kVersion) throw Error("checkpoint: unsupported version");

  Checkpoint cp;
  cp.meta = header.value("meta", nlohmann::json::object());
  for (const auto& n : header.at("networks")) {
    const auto sizes = n.at("sizes").get<std::vector<int>>();
    Mlp net = Mlp::zeros(sizes, parse_activation(n.at("activation").get<std::string>()));
    if (n.at("parameters").get<std::size_t>() != net.parameter_count())
      throw Error("checkpoint: parameter count does not match sizes for '" + n.at("name").get<std::string>() + "'");
    cp.networks.push_back({n.at("name").get<std::string>(), std::move(net)});
  }
  for (auto& n : cp.networks) {
    std::vector<double> p(n.net.parameter_count());
    for (double& v : p) v = read_le(is);
    n.net.assign_parameters(p);
  }
  return cp;
}

void save_checkpoint(const std::string& path, const Checkpoint& cp) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("checkpoint: cannot open '" + path + "' for writing");
  write_checkpoint(os, cp);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("checkpoint: cannot open '" + path + "'");
  return read_checkpoint(is);
}

}  // namespace xpinn::nn
