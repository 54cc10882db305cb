#include "xpinn/problems/problem.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace xpinn::problems {

using nlohmann::json;

namespace {

// Reads one JSON object, rejecting unknown keys and wrong types with the full
// dotted path of the field.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail("", "expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    const std::string where = key.empty() ? (path_.empty() ? "config" : path_) : at(key);
    throw ConfigError(where + ": " + what);
  }

  template <class T>
  void get(const std::string& key, T& out) {
    if (!j_.contains(key)) return;
    seen_.insert(key);
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception&) {
      fail(key, std::string("expected ") + expected<T>());
    }
  }

  void get(const std::string& key, Vec2& out) {
    if (!j_.contains(key)) return;
    seen_.insert(key);
    const json& v = j_.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) fail(key, "expected [x, y]");
    out = Vec2(v[0].get<double>(), v[1].get<double>());
  }

  /// Applies `parse` to a string field, prefixing its error with the path.
  template <class T, class F>
  void get_tag(const std::string& key, T& out, F parse) {
    std::string s;
    if (!j_.contains(key)) return;
    get(key, s);
    try {
      out = parse(s);
    } catch (const Error& e) {
      fail(key, e.what());
    }
  }

  const json* child(const std::string& key) {
    if (!j_.contains(key)) return nullptr;
    seen_.insert(key);
    return &j_.at(key);
  }

  const json& array(const std::string& key) {
    const json* c = child(key);
    if (!c->is_array()) fail(key, "expected an array");
    return *c;
  }

  void finish() const {
    for (const auto& [k, v] : j_.items())
      if (!seen_.count(k)) fail(k, "unknown field");
  }

 private:
  template <class T>
  static const char* expected() {
    if constexpr (std::is_same_v<T, bool>) return "a boolean";
    else if constexpr (std::is_same_v<T, std::string>) return "a string";
    else if constexpr (std::is_integral_v<T>) return "an integer";
    else return "a number";
  }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

json vec(const Vec2& v) { return json::array({v.x(), v.y()}); }

json segment_json(const geom::BoundarySegment& s) {
  json j{{"edge", geom::to_string(s.edge)}};
  if (std::isfinite(s.from)) j["from"] = s.from;
  if (std::isfinite(s.to)) j["to"] = s.to;
  return j;
}

void read_segment(Reader& r, geom::BoundarySegment& s) {
  r.get_tag("edge", s.edge, geom::parse_edge);
  r.get("from", s.from);
  r.get("to", s.to);
}

json ctm_json(const quad::CtmConfig& c) {
  return {{"n_rays", c.n_rays}, {"gauss_order", c.gauss_order}, {"subintervals", c.subintervals}};
}

void read_ctm(const json& j, const std::string& path, quad::CtmConfig& c) {
  Reader r(j, path);
  r.get("n_rays", c.n_rays);
  r.get("gauss_order", c.gauss_order);
  r.get("subintervals", c.subintervals);
  r.finish();
}

json arch_json(const nn::Architecture& a) {
  return {{"hidden_layers", a.hidden_layers}, {"neurons", a.neurons}, {"activation", std::string(nn::to_string(a.activation))}};
}

void read_arch(const json& j, const std::string& path, nn::Architecture& a) {
  Reader r(j, path);
  r.get("hidden_layers", a.hidden_layers);
  r.get("neurons", a.neurons);
  r.get_tag("activation", a.activation, [](const std::string& s) { return nn::parse_activation(s); });
  r.finish();
}

void read_domain(const json& j, geom::DomainSpec& d) {
  Reader r(j, "domain");
  r.get("dimension", d.dimension);
  if (const json* b = r.child("bounds")) {
    if (!b->is_array() || b->size() != 4) r.fail("bounds", "expected [xmin, xmax, ymin, ymax]");
    try {
      d.bounds = {(*b)[0].get<double>(), (*b)[1].get<double>(), (*b)[2].get<double>(), (*b)[3].get<double>()};
    } catch (const json::exception&) {
      r.fail("bounds", "expected [xmin, xmax, ymin, ymax]");
    }
  }
  if (r.has("holes")) {
    const json& a = r.array("holes");
    d.holes.clear();
    for (std::size_t i = 0; i < a.size(); ++i) {
      Reader h(a[i], "domain.holes[" + std::to_string(i) + "]");
      geom::Circle c;
      h.get("center", c.center);
      h.get("radius", c.radius);
      h.finish();
      d.holes.push_back(c);
    }
  }
  if (r.has("cracks")) {
    const json& a = r.array("cracks");
    d.cracks.clear();
    for (std::size_t i = 0; i < a.size(); ++i) {
      Reader h(a[i], "domain.cracks[" + std::to_string(i) + "]");
      geom::Crack c;
      c.id = static_cast<int>(i);
      h.get("id", c.id);
      h.get("tip1", c.tip1);
      h.get("tip2", c.tip2);
      h.get("l0", c.l0);
      h.get("edge", c.edge);
      h.finish();
      d.cracks.push_back(c);
    }
  }
  if (r.has("bar_cracks")) {
    const json& a = r.array("bar_cracks");
    d.bar_cracks.clear();
    for (std::size_t i = 0; i < a.size(); ++i) {
      Reader h(a[i], "domain.bar_cracks[" + std::to_string(i) + "]");
      geom::BarCrack c;
      c.id = static_cast<int>(i);
      h.get("id", c.id);
      h.get("x0", c.x0);
      h.get("l0", c.l0);
      h.finish();
      d.bar_cracks.push_back(c);
    }
  }
  r.finish();
}

void read_loads(const json& j, elastic::LoadSpec& l) {
  Reader r(j, "loads");
  r.get("body_force", l.body_force);
  if (r.has("tractions")) {
    const json& a = r.array("tractions");
    l.tractions.clear();
    for (std::size_t i = 0; i < a.size(); ++i) {
      Reader h(a[i], "loads.tractions[" + std::to_string(i) + "]");
      elastic::Traction t;
      read_segment(h, t.segment);
      h.get("value", t.value);
      h.finish();
      l.tractions.push_back(t);
    }
  }
  if (r.has("dirichlet")) {
    const json& a = r.array("dirichlet");
    l.dirichlet.clear();
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::string path = "loads.dirichlet[" + std::to_string(i) + "]";
      Reader h(a[i], path);
      elastic::Dirichlet d;
      read_segment(h, d.segment);
      if (const json* c = h.child("components")) {
        if (!c->is_array() || c->size() != 2 || !(*c)[0].is_boolean() || !(*c)[1].is_boolean())
          h.fail("components", "expected [bool, bool]");
        d.components = {(*c)[0].get<bool>(), (*c)[1].get<bool>()};
      }
      h.get("value", d.value);
      h.get("penalty", d.penalty);
      h.finish();
      l.dirichlet.push_back(d);
    }
  }
  r.finish();
}

void read_quadrature(const json& j, quad::QuadratureConfig& q) {
  Reader r(j, "quadrature");
  r.get_tag("method", q.method, quad::parse_method);
  if (const json* c = r.child("standard")) read_ctm(*c, "quadrature.standard", q.standard);
  if (const json* c = r.child("enriched")) read_ctm(*c, "quadrature.enriched", q.enriched);
  if (const json* c = r.child("udipm")) {
    Reader u(*c, "quadrature.udipm");
    u.get("standard_points", q.udipm.standard_points);
    u.get("enriched_points", q.udipm.enriched_points);
    u.finish();
  }
  if (const json* c = r.child("boundary")) {
    Reader b(*c, "quadrature.boundary");
    b.get("gauss_order", q.boundary.gauss_order);
    b.get("subintervals", q.boundary.subintervals);
    b.finish();
  }
  r.finish();
}

void read_model(const json& j, solver::ModelConfig& m) {
  Reader r(j, "model");
  if (r.has("scheme")) {
    int s = 0;
    r.get("scheme", s);
    try {
      m.scheme = solver::parse_scheme(s);
    } catch (const Error& e) {
      r.fail("scheme", e.what());
    }
  }
  r.get_tag("layout", m.layout, solver::parse_layout);
  if (const json* c = r.child("standard")) read_arch(*c, "model.standard", m.standard);
  if (const json* c = r.child("enriched")) read_arch(*c, "model.enriched", m.enriched);
  if (const json* c = r.child("singular")) read_arch(*c, "model.singular", m.singular);
  r.get("singular_enabled", m.singular_enabled);
  r.get("singular_radius", m.singular_radius);
  r.get_tag("enrichment_1d", m.enrichment_1d, solver::parse_enrichment_1d);
  r.get("sawtooth_order", m.sawtooth_order);
  r.finish();
}

void read_train(const json& j, solver::TrainConfig& t) {
  Reader r(j, "train");
  r.get("epochs", t.epochs);
  r.get("learning_rate", t.learning_rate);
  r.get("decay_factor", t.decay_factor);
  r.get("decay_every", t.decay_every);
  r.get("beta1", t.beta1);
  r.get("beta2", t.beta2);
  r.get("epsilon", t.epsilon);
  r.get("snapshot_every", t.snapshot_every);
  r.get("early_stop", t.early_stop);
  r.get("window", t.window);
  r.get("tolerance", t.tolerance);
  r.get("spike_epoch", t.spike_epoch);
  r.get("spike_factor", t.spike_factor);
  r.finish();
}

}  // namespace

json to_json(const ProblemSpec& p) {
  json domain{{"dimension", p.domain.dimension},
              {"bounds", {p.domain.bounds.xmin, p.domain.bounds.xmax, p.domain.bounds.ymin, p.domain.bounds.ymax}},
              {"holes", json::array()},
              {"cracks", json::array()},
              {"bar_cracks", json::array()}};
  for (const auto& h : p.domain.holes) domain["holes"].push_back({{"center", vec(h.center)}, {"radius", h.radius}});
  for (const auto& c : p.domain.cracks)
    domain["cracks"].push_back(
        {{"id", c.id}, {"tip1", vec(c.tip1)}, {"tip2", vec(c.tip2)}, {"l0", c.l0}, {"edge", c.edge}});
  for (const auto& c : p.domain.bar_cracks) domain["bar_cracks"].push_back({{"id", c.id}, {"x0", c.x0}, {"l0", c.l0}});

  json loads{{"body_force", vec(p.loads.body_force)}, {"tractions", json::array()}, {"dirichlet", json::array()}};
  for (const auto& t : p.loads.tractions) {
    json e = segment_json(t.segment);
    e["value"] = vec(t.value);
    loads["tractions"].push_back(e);
  }
  for (const auto& d : p.loads.dirichlet) {
    json e = segment_json(d.segment);
    e["components"] = {d.components[0], d.components[1]};
    e["value"] = vec(d.value);
    e["penalty"] = d.penalty;
    loads["dirichlet"].push_back(e);
  }

  const auto& q = p.quadrature;
  const auto& m = p.model;
  const auto& t = p.train;
  return {{"name", p.name},
          {"seed", p.seed},
          {"desk_scale", p.desk_scale},
          {"domain", domain},
          {"material",
           {{"E", p.material.E}, {"nu", p.material.nu}, {"mode", elastic::to_string(p.material.mode)},
            {"area", p.material.area}}},
          {"loads", loads},
          {"quadrature",
           {{"method", quad::to_string(q.method)},
            {"standard", ctm_json(q.standard)},
            {"enriched", ctm_json(q.enriched)},
            {"udipm", {{"standard_points", q.udipm.standard_points}, {"enriched_points", q.udipm.enriched_points}}},
            {"boundary", {{"gauss_order", q.boundary.gauss_order}, {"subintervals", q.boundary.subintervals}}}}},
          {"model",
           {{"scheme", static_cast<int>(m.scheme)},
            {"layout", solver::to_string(m.layout)},
            {"standard", arch_json(m.standard)},
            {"enriched", arch_json(m.enriched)},
            {"singular", arch_json(m.singular)},
            {"singular_enabled", m.singular_enabled},
            {"singular_radius", m.singular_radius},
            {"enrichment_1d", solver::to_string(m.enrichment_1d)},
            {"sawtooth_order", m.sawtooth_order}}},
          {"train",
           {{"epochs", t.epochs},
            {"learning_rate", t.learning_rate},
            {"decay_factor", t.decay_factor},
            {"decay_every", t.decay_every},
            {"beta1", t.beta1},
            {"beta2", t.beta2},
            {"epsilon", t.epsilon},
            {"snapshot_every", t.snapshot_every},
            {"early_stop", t.early_stop},
            {"window", t.window},
            {"tolerance", t.tolerance},
            {"spike_epoch", t.spike_epoch},
            {"spike_factor", t.spike_factor}}},
          {"grid", {{"nx", p.grid.nx}, {"ny", p.grid.ny}}},
          {"export",
           {{"fields", p.exports.fields},
            {"history", p.exports.history},
            {"points", p.exports.points},
            {"checkpoint", p.exports.checkpoint}}}};
}

ProblemSpec problem_from_json(const json& j) {
  Reader r(j, "");
  ProblemSpec p;
  bool desk = false;
  r.get("desk_scale", desk);
  if (r.has("builtin")) {
    std::string name;
    r.get("builtin", name);
    try {
      p = builtin(name, desk);
    } catch (const ConfigError& e) {
      r.fail("builtin", e.what());
    }
  }
  p.desk_scale = desk;
  r.get("name", p.name);
  r.get("seed", p.seed);
  if (const json* c = r.child("domain")) read_domain(*c, p.domain);
  if (const json* c = r.child("material")) {
    Reader m(*c, "material");
    m.get("E", p.material.E);
    m.get("nu", p.material.nu);
    m.get_tag("mode", p.material.mode, elastic::parse_mode);
    m.get("area", p.material.area);
    m.finish();
  }
  if (const json* c = r.child("loads")) read_loads(*c, p.loads);
  if (const json* c = r.child("quadrature")) read_quadrature(*c, p.quadrature);
  if (const json* c = r.child("model")) read_model(*c, p.model);
  if (const json* c = r.child("train")) read_train(*c, p.train);
  if (const json* c = r.child("grid")) {
    Reader g(*c, "grid");
    g.get("nx", p.grid.nx);
    g.get("ny", p.grid.ny);
    g.finish();
  }
  if (const json* c = r.child("export")) {
    Reader e(*c, "export");
    e.get("fields", p.exports.fields);
    e.get("history", p.exports.history);
    e.get("points", p.exports.points);
    e.get("checkpoint", p.exports.checkpoint);
    e.finish();
  }
  r.finish();
  return p;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line and column.
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON: " + e.what());
  }
}

ProblemSpec load_problem(const std::string& path) {
  const json j = read_json_file(path);
  try {
    return problem_from_json(j);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::uint64_t config_hash(const ProblemSpec& p) {
  std::uint64_t h = 14695981039346656037ull;
  for (const unsigned char c : to_json(p).dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

Setup prepare(const ProblemSpec& p) {
  const auto violations = validate(p);
  if (!violations.empty()) {
    std::string msg = "invalid problem '" + p.name + "':";
    for (const auto& v : violations) msg += "\n  " + v;
    throw ConfigError(msg);
  }
  geom::Domain domain(p.domain);
  elastic::PointSets points = elastic::make_point_sets(domain, p.loads, p.quadrature);
  return Setup{std::move(domain), std::move(points)};
}

solver::ModelConfig model_config(const ProblemSpec& p) {
  solver::ModelConfig m = p.model;
  m.seed = p.seed;
  return m;
}

}  // namespace xpinn::problems
