#include "xpinn/problems/problem.hpp"

#include "xpinn/quadrature/gauss_legendre.hpp"

#include <cmath>

namespace xpinn::problems {

namespace {

using elastic::Dirichlet;
using elastic::Traction;
using geom::BoundarySegment;
using geom::Edge;

nn::Architecture arch(int layers, int neurons) { return {layers, neurons, nn::Activation::tanh, 0}; }

elastic::LoadSpec plate_loads(const Vec2& top_traction) {
  elastic::LoadSpec loads;
  loads.tractions.push_back(Traction{BoundarySegment{Edge::top}, top_traction});
  // A unit penalty already dominates the 0.1 reaction; 10 E makes the L1 term chatter.
  loads.dirichlet.push_back(Dirichlet{BoundarySegment{Edge::bottom}, {true, true}, Vec2::Zero(), 1.0});
  return loads;
}

ProblemSpec plate(const std::string& name) {
  ProblemSpec p;
  p.name = name;
  p.domain.dimension = 2;
  p.domain.bounds = geom::Rect{0.0, 1.0, 0.0, 1.0};
  p.material = {1.0, 0.3, elastic::Mode::plane_stress, 1.0};
  p.train.epochs = 25000;
  p.train.learning_rate = 1e-4;
  return p;
}

ProblemSpec bar1d(bool desk) {
  ProblemSpec p;
  p.name = "bar1d";
  p.domain.dimension = 1;
  p.domain.bounds = geom::Rect{0.0, 1.0, 0.0, 0.0};
  p.domain.bar_cracks.push_back(geom::BarCrack{0, 0.3, 0.1});
  p.material = {1.0, 0.0, elastic::Mode::bar_1d, 1.0};
  // Body force per volume N / A with N = 10.
  p.loads.body_force = Vec2(10.0, 0.0);
  p.loads.dirichlet.push_back(Dirichlet{BoundarySegment{Edge::left}, {true, false}, Vec2::Zero(), 0.0});
  // u0 = 0.1 reproduces the reference potential -6.8667.
  p.loads.dirichlet.push_back(Dirichlet{BoundarySegment{Edge::right}, {true, false}, Vec2(0.1, 0.0), 0.0});
  p.quadrature.standard = {1, 5, 10};  // n_rays is unused in 1D
  p.quadrature.enriched = {1, 5, 10};
  p.quadrature.udipm = {1000, 0};
  p.model.standard = arch(2, 20);
  p.model.enriched = arch(2, 10);
  p.model.sawtooth_order = 2;
  // The default 1e-3 schedule is far from converged after 5000 epochs here.
  p.train.learning_rate = 2e-2;
  p.train.decay_every = 1000;
  p.train.decay_factor = 0.3;
  p.train.epochs = desk ? 5000 : 10000;
  p.grid = {201, 1};
  return p;
}

ProblemSpec center_crack(bool desk) {
  ProblemSpec p = plate("center_crack");
  p.domain.cracks.push_back(geom::Crack{0, Vec2(0.35, 0.5), Vec2(0.65, 0.5), 0.1, false});
  p.loads = plate_loads(Vec2(0.0, 0.1));
  if (desk) {
    p.quadrature.standard = {64, 4, 16};
    p.quadrature.enriched = {24, 4, 6};
    p.model.standard = arch(4, 20);
    p.model.enriched = arch(4, 10);
    p.train.epochs = 5000;
  } else {
    p.quadrature.standard = {128, 4, 34};
    p.quadrature.enriched = {45, 5, 12};
    p.model.standard = arch(10, 20);
    p.model.enriched = arch(10, 10);
  }
  return p;
}

ProblemSpec edge_crack_hole(bool desk) {
  ProblemSpec p = plate("edge_crack_hole");
  // Semicircular notch on the left edge; the crack runs from the notch root
  // (0.1, 0.5) to the tip (0.3, 0.5). The mirrored tip puts the profile peak
  // on the notch surface.
  p.domain.holes.push_back(geom::Circle{Vec2(0.0, 0.5), 0.1});
  p.domain.cracks.push_back(geom::Crack{0, Vec2(-0.1, 0.5), Vec2(0.3, 0.5), 0.1, true});
  p.loads = plate_loads(Vec2(0.1, 0.0));
  if (desk) {
    p.quadrature.standard = {64, 4, 17};
    p.quadrature.enriched = {20, 4, 6};
    p.model.standard = arch(4, 20);
    p.model.enriched = arch(4, 20);
    p.train.epochs = 5000;
  } else {
    p.quadrature.standard = {128, 4, 40};
    p.quadrature.enriched = {40, 5, 12};
    p.model.standard = arch(15, 20);
    p.model.enriched = arch(10, 20);
  }
  return p;
}

// Tip coordinates are estimates read off the benchmark figure, not exact data.
ProblemSpec multi_crack(bool desk) {
  ProblemSpec p = plate("multi_crack");
  p.domain.cracks = {
      geom::Crack{0, Vec2(0.15, 0.80), Vec2(0.40, 0.70), 0.1, false},
      geom::Crack{1, Vec2(0.60, 0.70), Vec2(0.85, 0.80), 0.1, false},
      geom::Crack{2, Vec2(0.15, 0.25), Vec2(0.40, 0.35), 0.1, false},
      geom::Crack{3, Vec2(0.60, 0.35), Vec2(0.85, 0.25), 0.1, false},
  };
  p.loads = plate_loads(Vec2(0.0, 0.1));
  if (desk) {
    p.quadrature.standard = {80, 4, 14};
    p.quadrature.enriched = {15, 5, 5};
    p.model.standard = arch(4, 20);
    p.model.enriched = arch(4, 10);
    p.train.epochs = 5000;
  } else {
    p.quadrature.standard = {160, 4, 28};
    p.quadrature.enriched = {30, 5, 9};
    p.model.standard = arch(10, 20);
    p.model.enriched = arch(10, 10);
  }
  return p;
}

// Small two-crack plate for comparing the shared and per-crack schemes.
ProblemSpec two_crack(bool desk) {
  ProblemSpec p = plate("two_crack");
  p.domain.cracks = {
      geom::Crack{0, Vec2(0.20, 0.30), Vec2(0.45, 0.30), 0.1, false},
      geom::Crack{1, Vec2(0.55, 0.72), Vec2(0.80, 0.68), 0.1, false},
  };
  p.loads = plate_loads(Vec2(0.0, 0.1));
  if (desk) {
    p.quadrature.standard = {48, 4, 10};
    p.quadrature.enriched = {12, 4, 5};
    p.model.standard = arch(2, 20);
    p.model.enriched = arch(2, 10);
    p.train.epochs = 2000;
  } else {
    p.quadrature.standard = {128, 4, 30};
    p.quadrature.enriched = {32, 4, 12};
    p.model.standard = arch(4, 20);
    p.model.enriched = arch(4, 10);
    p.train.epochs = 10000;
  }
  p.grid = {51, 51};
  return p;
}

}  // namespace

std::vector<std::string> builtin_names() { return {"bar1d", "center_crack", "edge_crack_hole", "multi_crack", "two_crack"}; }

ProblemSpec builtin(const std::string& name, bool desk_scale) {
  ProblemSpec p;
  if (name == "bar1d") p = bar1d(desk_scale);
  else if (name == "center_crack") p = center_crack(desk_scale);
  else if (name == "edge_crack_hole") p = edge_crack_hole(desk_scale);
  else if (name == "multi_crack") p = multi_crack(desk_scale);
  else if (name == "two_crack") p = two_crack(desk_scale);
  else throw ConfigError("unknown builtin problem '" + name + "'");
  p.desk_scale = desk_scale;
  return p;
}

std::vector<std::string> validate(const ProblemSpec& p) {
  std::vector<std::string> out = geom::validate(p.domain);
  try {
    elastic::validate(p.material);
  } catch (const Error& e) {
    out.emplace_back(e.what());
  }
  if ((p.material.mode == elastic::Mode::bar_1d) != (p.domain.dimension == 1))
    out.emplace_back("material.mode: bar_1d goes with dimension 1 and only with it");
  for (auto& v : elastic::validate(p.loads, p.domain)) out.push_back(std::move(v));
  for (auto& v : solver::validate(p.train)) out.push_back(std::move(v));
  const auto check_ctm = [&](const quad::CtmConfig& c, const std::string& where) {
    if (c.gauss_order < 1 || c.gauss_order > quad::kMaxGaussOrder)
      out.push_back(where + ".gauss_order must lie in [1, " + std::to_string(quad::kMaxGaussOrder) + "]");
    if (c.subintervals < 1) out.push_back(where + ".subintervals must be positive");
    if (p.domain.dimension == 2 && c.n_rays < 1) out.push_back(where + ".n_rays must be positive");
  };
  check_ctm(p.quadrature.standard, "quadrature.standard");
  check_ctm(p.quadrature.enriched, "quadrature.enriched");
  if (p.quadrature.method == quad::Method::udipm) {
    if (p.quadrature.udipm.standard_points < 1) out.emplace_back("quadrature.udipm.standard_points must be positive");
    if (p.domain.dimension == 2 && p.quadrature.udipm.enriched_points < 1 &&
        !p.domain.cracks.empty())
      out.emplace_back("quadrature.udipm.enriched_points must be positive");
  }
  for (const auto* a : {&p.model.standard, &p.model.enriched, &p.model.singular}) {
    if (a->hidden_layers < 1 || a->neurons < 1) {
      out.emplace_back("model: every network needs at least one hidden layer and one neuron");
      break;
    }
  }
  if (p.model.sawtooth_order < 1) out.emplace_back("model.sawtooth_order must be at least 1");
  if (p.grid.nx < 2 || (p.domain.dimension == 2 && p.grid.ny < 2))
    out.emplace_back("grid: resolution must be at least 2 per axis");
  return out;
}

}  // namespace xpinn::problems
