#include "xpinn/solver/model.hpp"

#include "xpinn/util/seed.hpp"

namespace xpinn::solver {

Scheme parse_scheme(int s) {
  if (s == 1) return Scheme::shared;
  if (s == 2) return Scheme::per_crack;
  throw ConfigError("scheme must be 1 or 2, got " + std::to_string(s));
}

std::string to_string(OutputLayout l) { return l == OutputLayout::per_direction ? "per_direction" : "combined"; }

OutputLayout parse_layout(const std::string& s) {
  if (s == "per_direction") return OutputLayout::per_direction;
  if (s == "combined") return OutputLayout::combined;
  throw ConfigError("unknown output layout '" + s + "' (expected per_direction or combined)");
}

std::string to_string(Enrichment1d e) { return e == Enrichment1d::sawtooth ? "sawtooth" : "heaviside"; }

Enrichment1d parse_enrichment_1d(const std::string& s) {
  if (s == "sawtooth") return Enrichment1d::sawtooth;
  if (s == "heaviside") return Enrichment1d::heaviside;
  throw ConfigError("unknown 1D enrichment '" + s + "' (expected sawtooth or heaviside)");
}

std::size_t FieldNet::parameter_count() const {
  std::size_t n = 0;
  for (const auto& m : nets) n += m.parameter_count();
  return n;
}

namespace {

FieldNet make_field(nn::Architecture arch, OutputLayout layout, int dim, int outputs, std::uint64_t& stream) {
  FieldNet f;
  f.layout = layout;
  f.outputs = outputs;
  const int count = layout == OutputLayout::per_direction ? outputs : 1;
  for (int i = 0; i < count; ++i) {
    arch.seed = util::splitmix64(stream++);
    f.nets.push_back(nn::init(arch, dim, layout == OutputLayout::per_direction ? 1 : outputs));
  }
  return f;
}

}  // namespace

XpinnModel::XpinnModel(const geom::Domain& domain, const ModelConfig& cfg)
    : domain_(&domain), cfg_(cfg), dim_(domain.dimension()), crack_count_(domain.crack_count()) {
  if (cfg.sawtooth_order < 1) throw ConfigError("sawtooth_order must be >= 1");
  if (cfg.singular_enabled && dim_ != 2) throw ConfigError("the singular branch is only available in 2D");
  std::uint64_t stream = cfg.seed * 0x9E3779B97F4A7C15ULL + 1;
  continuous_ = make_field(cfg.standard, cfg.layout, dim_, dim_, stream);
  const std::size_t n_enriched = crack_count_ == 0 ? 0 : cfg.scheme == Scheme::shared ? 1 : crack_count_;
  for (std::size_t i = 0; i < n_enriched; ++i) enriched_.push_back(make_field(cfg.enriched, cfg.layout, dim_, dim_, stream));
  if (cfg.singular_enabled)
    for (std::size_t i = 0; i < n_enriched; ++i)
      singular_.push_back(make_field(cfg.singular, OutputLayout::combined, dim_, 4 * dim_, stream));
}

std::size_t XpinnModel::enriched_net_for(int crack) const {
  if (crack < 0 || static_cast<std::size_t>(crack) >= crack_count_ || enriched_.empty())
    throw Error("enriched point refers to crack " + std::to_string(crack) + ", which has no bound network");
  return cfg_.scheme == Scheme::shared ? 0 : static_cast<std::size_t>(crack);
}

EnrichmentSample XpinnModel::enrichment(int crack, const Vec2& p, Side side) const {
  if (dim_ == 1) {
    const auto& c = domain_->spec().bar_cracks.at(static_cast<std::size_t>(crack));
    if (p.x() < c.x0 - c.l0 || p.x() > c.x0 + c.l0) return {};
    if (cfg_.enrichment_1d == Enrichment1d::heaviside) {
      if (p.x() == c.x0 && side == Side::none) throw SideRequiredError("Heaviside enrichment at x0 without side");
      const double h = p.x() == c.x0 ? sign_of(side) : enrichment::heaviside(p.x(), c.x0);
      return {h, Vec2::Zero()};
    }
    const enrichment::SawtoothParams sp{c.x0, c.l0, cfg_.sawtooth_order};
    return {enrichment::sawtooth(p.x(), sp, side), Vec2{enrichment::sawtooth_deriv(p.x(), sp, side), 0.0}};
  }
  const auto e = enrichment::enrichment_2d(p, domain_->frames().at(static_cast<std::size_t>(crack)), side);
  return {e.value, e.gradient};
}

enrichment::SingularChannels XpinnModel::singular_channels(int crack, const Vec2& p, Side side) const {
  const auto& f = domain_->frames().at(static_cast<std::size_t>(crack));
  const double radius = cfg_.singular_radius > 0.0 ? cfg_.singular_radius : f.l0();
  return enrichment::singular_channels(p, f, radius, side);
}

std::vector<const nn::Mlp*> XpinnModel::networks() const {
  std::vector<const nn::Mlp*> out;
  for (const auto& m : continuous_.nets) out.push_back(&m);
  for (const auto& f : enriched_)
    for (const auto& m : f.nets) out.push_back(&m);
  for (const auto& f : singular_)
    for (const auto& m : f.nets) out.push_back(&m);
  return out;
}

std::vector<nn::Mlp*> XpinnModel::networks() {
  std::vector<nn::Mlp*> out;
  for (auto& m : continuous_.nets) out.push_back(&m);
  for (auto& f : enriched_)
    for (auto& m : f.nets) out.push_back(&m);
  for (auto& f : singular_)
    for (auto& m : f.nets) out.push_back(&m);
  return out;
}

std::vector<std::string> XpinnModel::network_names() const {
  static const char* comp[] = {"u", "v"};
  std::vector<std::string> names;
  auto add = [&](const FieldNet& f, const std::string& prefix) {
    if (f.layout == OutputLayout::combined) {
      names.push_back(prefix);
    } else {
      for (std::size_t i = 0; i < f.nets.size(); ++i) names.push_back(prefix + "." + comp[i]);
    }
  };
  add(continuous_, "continuous");
  for (std::size_t i = 0; i < enriched_.size(); ++i) add(enriched_[i], "enriched." + std::to_string(i));
  for (std::size_t i = 0; i < singular_.size(); ++i) add(singular_[i], "singular." + std::to_string(i));
  return names;
}

std::vector<ParameterBlock> XpinnModel::blocks() const {
  const auto nets = networks();
  const auto names = network_names();
  std::vector<ParameterBlock> out;
  std::size_t offset = 0;
  for (std::size_t i = 0; i < nets.size(); ++i) {
    out.push_back({names[i], offset, nets[i]->parameter_count()});
    offset += nets[i]->parameter_count();
  }
  return out;
}

std::size_t XpinnModel::parameter_count() const {
  std::size_t n = 0;
  for (const auto* m : networks()) n += m->parameter_count();
  return n;
}

std::vector<double> XpinnModel::parameters() const {
  std::vector<double> theta(parameter_count());
  std::size_t offset = 0;
  for (const auto* m : networks()) {
    m->copy_parameters_to(std::span<double>(theta).subspan(offset, m->parameter_count()));
    offset += m->parameter_count();
  }
  return theta;
}

void XpinnModel::assign_parameters(std::span<const double> theta) {
  if (theta.size() != parameter_count()) throw Error("parameter vector has the wrong length");
  std::size_t offset = 0;
  for (auto* m : networks()) {
    m->assign_parameters(theta.subspan(offset, m->parameter_count()));
    offset += m->parameter_count();
  }
}

DisplacementSample displacement(const XpinnModel& model, const Vec2& p, const geom::RegionTag& tag) {
  const auto theta = model.parameters();
  const auto u = displacement_dual<double>(model, std::span<const double>(theta), p, tag);
  DisplacementSample s;
  for (int i = 0; i < model.dimension(); ++i) {
    s.u[i] = u[i].value;
    for (int j = 0; j < model.dimension(); ++j) s.jacobian(i, j) = u[i].partials[static_cast<std::size_t>(j)];
  }
  return s;
}

}  // namespace xpinn::solver
