#include "xpinn/problems/problem.hpp"
#include "xpinn/solver/energy.hpp"
#include "xpinn/solver/ensemble.hpp"
#include "xpinn/solver/fields.hpp"
#include "xpinn/solver/train.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace {

using namespace xpinn;
using namespace xpinn::solver;

/// A builtin with tiny networks and a coarse point set.
struct Small {
  problems::ProblemSpec spec;
  problems::Setup setup;
  Small(const std::string& name, int scheme = 2)
      : spec(shrink(problems::builtin(name, true), scheme)), setup(problems::prepare(spec)) {}

  static problems::ProblemSpec shrink(problems::ProblemSpec p, int scheme) {
    p.model.standard = {1, 3, nn::Activation::tanh, 0};
    p.model.enriched = {1, 3, nn::Activation::tanh, 0};
    p.model.scheme = parse_scheme(scheme);
    if (p.domain.dimension == 2) {
      p.quadrature.standard = {8, 2, 2};
      p.quadrature.enriched = {4, 2, 2};
      p.quadrature.boundary = {2, 4};
    }
    return p;
  }
  XpinnModel model() const { return XpinnModel(setup.domain, problems::model_config(spec)); }
  ModelEnergy energy(const XpinnModel& m) const { return ModelEnergy(m, setup.points, spec.loads, spec.material); }
};

double rel_err(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-8}); }

TEST(Model, ParameterCountsAndBlocks) {
  Small s("two_crack", 2);
  const auto m = s.model();
  // Four per-direction nets of 2 -> 3 -> 1 plus the continuous pair: 13 each.
  EXPECT_EQ(m.parameter_count(), 6u * 13u);
  ASSERT_EQ(m.enriched().size(), 2u);
  EXPECT_EQ(m.enriched_net_for(0), 0u);
  EXPECT_EQ(m.enriched_net_for(1), 1u);
  std::size_t off = 0;
  for (const auto& b : m.blocks()) {
    EXPECT_EQ(b.offset, off);
    off += b.count;
  }
  EXPECT_EQ(off, m.parameter_count());

  Small s1("two_crack", 1);
  const auto m1 = s1.model();
  EXPECT_EQ(m1.enriched().size(), 1u);
  EXPECT_EQ(m1.enriched_net_for(0), m1.enriched_net_for(1));
}

TEST(Model, ParameterRoundTripAndSeedDeterminism) {
  Small s("center_crack");
  auto a = s.model();
  const auto b = s.model();
  EXPECT_EQ(a.parameters(), b.parameters());
  auto theta = a.parameters();
  for (double& t : theta) t *= -0.5;
  a.assign_parameters(theta);
  EXPECT_EQ(a.parameters(), theta);
  s.spec.seed = 2;
  EXPECT_NE(s.model().parameters(), b.parameters());
}

TEST(Model, DisplacementComposition) {
  Small s("center_crack");
  const auto m = s.model();
  const Vec2 p{0.5, 0.52};
  const auto tag = s.setup.domain.classify(p);
  ASSERT_TRUE(tag.enriched());
  const auto d = displacement(m, p, tag);
  const Eigen::VectorXd x = p;
  const double nc = m.continuous().nets[0].forward(x)(0);
  const double nd = m.enriched()[0].nets[0].forward(x)(0);
  const auto e = m.enrichment(0, p, tag.side);
  EXPECT_NEAR(d.u.x(), nc + e.value * nd, 1e-14);

  const Vec2 q{0.1, 0.1};
  const auto ds = displacement(m, q, s.setup.domain.classify(q));
  EXPECT_NEAR(ds.u.x(), m.continuous().nets[0].forward(Eigen::VectorXd(q))(0), 1e-14);
}

TEST(Model, DualPathMatchesDisplacement) {
  Small s("two_crack");
  const auto m = s.model();
  const auto theta = m.parameters();
  for (const auto& q : s.setup.points.domain) {
    const auto d = displacement(m, q.position, q.tag);
    const auto dd = displacement_dual<double>(m, theta, q.position, q.tag);
    for (int i = 0; i < 2; ++i) {
      EXPECT_NEAR(dd[i].value, d.u[i], 1e-13);
      for (int j = 0; j < 2; ++j) EXPECT_NEAR(dd[i].partials[j], d.jacobian(i, j), 1e-12);
    }
  }
}

TEST(Model, JacobianMatchesCentralDifferences) {
  Small s("center_crack");
  const auto m = s.model();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.02, 0.98);
  const double h = 1e-6;
  int checked = 0;
  while (checked < 100) {
    const Vec2 p{u(rng), u(rng)};
    const auto tag = s.setup.domain.classify(p);
    const auto f = s.setup.domain.frames()[0];
    const Vec2 l = f.to_local(p);
    if (std::abs(l.y() - f.eta1()) < 1e-3) continue;
    // Stay away from the rectangle boundary where the classification changes.
    if (std::abs(std::abs(l.y() - f.eta1()) - 0.1) < 1e-3) continue;
    const auto d = displacement(m, p, tag);
    for (int j = 0; j < 2; ++j) {
      Vec2 e = Vec2::Zero();
      e[j] = h;
      const auto up = displacement(m, p + e, s.setup.domain.classify(p + e)).u;
      const auto dn = displacement(m, p - e, s.setup.domain.classify(p - e)).u;
      for (int i = 0; i < 2; ++i) EXPECT_LT(std::abs((up[i] - dn[i]) / (2 * h) - d.jacobian(i, j)), 1e-7);
    }
    ++checked;
  }
}

class EnergyGradient : public ::testing::TestWithParam<std::string> {};

TEST_P(EnergyGradient, MatchesTapeAndFiniteDifferences) {
  Small s(GetParam());
  auto m = s.model();
  ASSERT_LE(m.parameter_count(), 100u);
  auto e = s.energy(m);
  std::vector<double> g(m.parameter_count());
  const Terms t = e.evaluate(m, g);
  const TapeEnergy ref = tape_energy(m, s.setup.points, s.spec.loads, s.spec.material);
  EXPECT_NEAR(t.total(), ref.terms.total(), 1e-12);
  EXPECT_NEAR(t.U, ref.terms.U, 1e-12);
  EXPECT_NEAR(t.T, ref.terms.T, 1e-12);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(g[i], ref.gradient[i], 1e-11) << i;

  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
  const auto theta = m.parameters();
  const double h = 1e-6;
  for (int k = 0; k < 20; ++k) {
    const std::size_t i = pick(rng);
    auto tp = theta, tm = theta;
    tp[i] += h;
    tm[i] -= h;
    m.assign_parameters(tp);
    const double fp = e.evaluate(m).total();
    m.assign_parameters(tm);
    const double fm = e.evaluate(m).total();
    EXPECT_LT(rel_err(g[i], (fp - fm) / (2 * h)), 1e-5) << "parameter " << i;
  }
}

INSTANTIATE_TEST_SUITE_P(Problems, EnergyGradient, ::testing::Values("bar1d", "center_crack", "two_crack"));

TEST(Routing, OtherCrackNetworkGetsExactlyZero) {
  Small s("two_crack", 2);
  const auto m = s.model();
  elastic::PointSets only0;
  only0.traction.resize(s.spec.loads.tractions.size());
  only0.dirichlet = s.setup.points.dirichlet;
  for (const auto& q : s.setup.points.domain)
    if (q.tag.enriched() && q.tag.crack == 0) only0.domain.push_back(q);
  ModelEnergy e(m, only0, s.spec.loads, s.spec.material);
  std::vector<double> g(m.parameter_count());
  e.evaluate(m, g);
  double own = 0.0;
  for (const auto& b : m.blocks()) {
    for (std::size_t i = b.offset; i < b.offset + b.count; ++i) {
      if (b.name.rfind("enriched.1", 0) == 0) EXPECT_EQ(g[i], 0.0) << b.name;
      if (b.name.rfind("enriched.0", 0) == 0) own += std::abs(g[i]);
    }
  }
  EXPECT_GT(own, 0.0);
}

TEST(Routing, ZeroEnrichedNetworksRemoveJumps) {
  Small s("two_crack", 2);
  auto m = s.model();
  EXPECT_GT(crack_jump(m, 0, 0.5 * (s.setup.domain.frames()[0].xi1() + s.setup.domain.frames()[0].xi2())).norm(),
            0.0);
  for (auto& f : m.enriched())
    for (auto& n : f.nets) n.assign_parameters(std::vector<double>(n.parameter_count(), 0.0));
  for (int c = 0; c < 2; ++c) {
    const auto& f = s.setup.domain.frames()[static_cast<std::size_t>(c)];
    for (int k = 1; k < 10; ++k) {
      const double xi = f.xi1() + (f.xi2() - f.xi1()) * k / 10.0;
      EXPECT_EQ(crack_jump(m, c, xi).norm(), 0.0);
    }
  }
}

TEST(Train, ZeroEpochsLeavesModelUntouched) {
  Small s("bar1d");
  auto m = s.model();
  auto e = s.energy(m);
  const auto before = m.parameters();
  TrainConfig cfg;
  cfg.epochs = 0;
  const auto h = train(m, e, cfg);
  EXPECT_TRUE(h.records.empty());
  EXPECT_EQ(h.stop, StopReason::completed);
  EXPECT_EQ(m.parameters(), before);
}

TEST(Train, EnergyDecreasesAndFinalMatchesLastRecord) {
  Small s("bar1d");
  auto m = s.model();
  auto e = s.energy(m);
  TrainConfig cfg;
  cfg.epochs = 300;
  cfg.learning_rate = 1e-2;
  const auto h = train(m, e, cfg);
  ASSERT_EQ(h.records.size(), 300u);
  EXPECT_LT(h.records.back().total, h.records.front().total);
  EXPECT_EQ(e.evaluate(m).total(), h.records.back().total);
  double best = INFINITY;
  for (const auto& r : h.records) best = std::min(best, r.total);
  EXPECT_EQ(best, h.best_energy);
}

TEST(Train, SpikeTriggersRestoreOfBestSnapshot) {
  Small s("bar1d");
  auto m = s.model();
  auto e = s.energy(m);
  TrainConfig cfg;
  cfg.epochs = 2000;
  cfg.learning_rate = 1e-2;
  cfg.spike_epoch = 500;
  cfg.spike_factor = 100.0;
  cfg.window = 50;
  const auto h = train(m, e, cfg);
  EXPECT_EQ(h.stop, StopReason::diverged);
  EXPECT_GT(h.stop_epoch, cfg.spike_epoch);
  EXPECT_LT(h.best_epoch, h.stop_epoch);
  EXPECT_EQ(e.evaluate(m).total(), h.best_energy);
}

TEST(Train, CallbackCanStop) {
  Small s("bar1d");
  auto m = s.model();
  auto e = s.energy(m);
  TrainConfig cfg;
  cfg.epochs = 100;
  const auto h = train(m, e, cfg, [](const EpochRecord& r) { return r.epoch < 9; });
  EXPECT_EQ(h.records.size(), 10u);
}

TEST(Train, InvalidConfigRejected) {
  Small s("bar1d");
  auto m = s.model();
  auto e = s.energy(m);
  TrainConfig cfg;
  cfg.learning_rate = -1.0;
  EXPECT_THROW(train(m, e, cfg), ConfigError);
}

TEST(Train, HistoryCsv) {
  RunHistory h;
  h.records.push_back({0, 1.5, 1.0, 0.25, 0.25});
  std::ostringstream out;
  write_history_csv(out, h);
  EXPECT_EQ(out.str(), "epoch,total,U,V,T\n0,1.5,1,0.25,0.25\n");
}

EnsembleJob job_of(const Small& s, int epochs) {
  EnsembleJob j;
  j.domain = &s.setup.domain;
  j.model = problems::model_config(s.spec);
  j.points = &s.setup.points;
  j.loads = s.spec.loads;
  j.material = s.spec.material;
  j.train.epochs = epochs;
  return j;
}

TEST(Ensemble, SingleRunHasZeroStd) {
  Small s("bar1d");
  const auto r = run_ensemble(job_of(s, 20), 1, 7);
  ASSERT_EQ(r.histories.size(), 1u);
  for (double v : r.stats.std) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(r.stats.mean.front(), r.histories[0].records.front().total);
}

TEST(Ensemble, IdenticalSeedsGiveIdenticalRuns) {
  Small s("bar1d");
  const auto r = run_ensemble(job_of(s, 20), 3, 7, true);
  ASSERT_EQ(r.histories.size(), 3u);
  for (double v : r.stats.std) EXPECT_EQ(v, 0.0);
  for (auto seed : r.seeds) EXPECT_EQ(seed, 7u);
}

TEST(Ensemble, DistinctSeedsAndPopulationStd) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_EQ(derive_seed(1, 3), derive_seed(1, 3));
  RunHistory a, b;
  a.records.push_back({0, 1.0});
  b.records.push_back({0, 3.0});
  b.records.push_back({1, 5.0});
  const auto st = ensemble_stats({a, b});
  ASSERT_EQ(st.epoch.size(), 2u);
  EXPECT_EQ(st.mean[0], 2.0);
  EXPECT_EQ(st.std[0], 1.0);
  EXPECT_EQ(st.count[1], 1);
  EXPECT_EQ(st.std[1], 0.0);
}

TEST(Fields, ZeroModelAndHoles) {
  Small s("edge_crack_hole");
  auto m = s.model();
  m.assign_parameters(std::vector<double>(m.parameter_count(), 0.0));
  const auto t = evaluate_fields(m, s.spec.material, 11, 11);
  ASSERT_EQ(t.rows.size(), 121u);
  int absent = 0;
  for (const auto& r : t.rows) {
    if (!r.present) {
      ++absent;
      EXPECT_LT((r.position - Vec2{0.0, 0.5}).norm(), 0.1 + 1e-12);
      continue;
    }
    EXPECT_EQ(r.u.norm(), 0.0);
    EXPECT_EQ(r.von_mises, 0.0);
  }
  EXPECT_GT(absent, 0);
  std::ostringstream csv, vtk;
  write_fields_csv(csv, t);
  write_fields_vtk(vtk, t);
  const std::string text = csv.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 121 - absent + 1);
  EXPECT_NE(vtk.str().find("STRUCTURED_POINTS"), std::string::npos);
  EXPECT_NE(vtk.str().find("DIMENSIONS 11 11 1"), std::string::npos);
}

TEST(Fields, BarLattice) {
  Small s("bar1d");
  const auto m = s.model();
  const auto t = evaluate_fields(m, s.spec.material, 21, 5);
  EXPECT_EQ(t.rows.size(), 21u);
  EXPECT_EQ(t.rows.back().position.x(), 1.0);
}

}  // namespace
