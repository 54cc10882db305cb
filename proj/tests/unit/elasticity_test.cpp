#include "xpinn/elasticity/loads.hpp"
#include "xpinn/problems/bar1d.hpp"
#include "xpinn/problems/problem.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace {

using namespace xpinn;
using namespace xpinn::elastic;

using Grad = std::array<std::array<double, 2>, 2>;

ElasticMaterial plane(Mode mode) { return {1.0, 0.3, mode, 1.0}; }

TEST(Strain, SymmetricPart) {
  EXPECT_TRUE(strain(Matrix2::Identity()).isApprox(Matrix2::Identity()));
  Matrix2 rot;
  rot << 0.0, -0.3, 0.3, 0.0;
  EXPECT_EQ(strain(rot).norm(), 0.0);
  Matrix2 g;
  g << 0.002, 0.001, 0.003, -0.001;
  const Matrix2 e = strain(g);
  EXPECT_NEAR(e(0, 1), 0.002, 1e-15);
  EXPECT_EQ(e(0, 1), e(1, 0));
  EXPECT_EQ(e(0, 0), 0.002);
}

TEST(Material, LameConstants) {
  const auto ps = plane(Mode::plane_strain);
  EXPECT_NEAR(ps.lambda(), 0.576923, 1e-6);
  EXPECT_NEAR(ps.mu(), 0.384615, 1e-6);
  const auto pss = plane(Mode::plane_stress);
  EXPECT_NEAR(pss.lambda(), 2.0 * ps.lambda() * ps.mu() / (ps.lambda() + 2.0 * ps.mu()), 1e-14);
  EXPECT_NEAR(pss.lambda(), 0.3 / (1.0 - 0.09), 1e-14);
  EXPECT_EQ(pss.lambda_3d(), ps.lambda());
}

TEST(Material, Validation) {
  EXPECT_THROW(validate(ElasticMaterial{0.0, 0.3}), ConfigError);
  EXPECT_THROW(validate(ElasticMaterial{1.0, 0.5}), ConfigError);
  EXPECT_THROW(validate(ElasticMaterial{1.0, -1.0}), ConfigError);
  EXPECT_THROW(validate(ElasticMaterial{1.0, 0.3, Mode::bar_1d, 0.0}), ConfigError);
  EXPECT_NO_THROW(validate(ElasticMaterial{}));
  EXPECT_EQ(parse_mode(to_string(Mode::plane_strain)), Mode::plane_strain);
  EXPECT_THROW(parse_mode("axisymmetric"), ConfigError);
}

TEST(Stress, Examples) {
  EXPECT_EQ(stress(Matrix2::Zero(), plane(Mode::plane_stress)).norm(), 0.0);
  Matrix2 e = Matrix2::Zero();
  e(0, 0) = 0.25;
  EXPECT_EQ(stress(e, ElasticMaterial{1.0, 0.0, Mode::bar_1d, 1.0})(0, 0), 0.25);
  e(0, 0) = 0.01;
  const Matrix2 s = stress(e, plane(Mode::plane_strain));
  EXPECT_NEAR(s(0, 0), 0.013462, 1e-6);
  EXPECT_NEAR(s(1, 1), 0.576923 * 0.01, 1e-8);
  EXPECT_EQ(s(0, 1), s(1, 0));
  // Plane stress leaves sigma22 free under uniaxial stress.
  Matrix2 eu = Matrix2::Zero();
  eu(0, 0) = 1.0;
  eu(1, 1) = -0.3;
  const Matrix2 su = stress(eu, plane(Mode::plane_stress));
  EXPECT_NEAR(su(0, 0), 1.0, 1e-14);
  EXPECT_NEAR(su(1, 1), 0.0, 1e-14);
}

TEST(VonMises, Examples) {
  const auto m = plane(Mode::plane_stress);
  EXPECT_EQ(von_mises(Matrix2::Zero(), m), 0.0);
  Matrix2 s = Matrix2::Zero();
  s(0, 0) = 2.5;
  EXPECT_NEAR(von_mises(s, m), 2.5, 1e-14);
  s.setZero();
  s(0, 1) = s(1, 0) = 2.5;
  EXPECT_NEAR(von_mises(s, m), std::sqrt(3.0) * 2.5, 1e-14);
  // Plane strain: equal biaxial stress s with sigma33 = 2 nu s.
  s.setZero();
  s(0, 0) = s(1, 1) = 1.0;
  EXPECT_NEAR(von_mises(s, plane(Mode::plane_strain)), 1.0 - 0.6, 1e-14);
  s(0, 0) = -3.0;
  EXPECT_EQ(von_mises(s, ElasticMaterial{1.0, 0.0, Mode::bar_1d, 1.0}), 3.0);
}

TEST(StrainEnergy, MatchesHalfSigmaEps) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (Mode mode : {Mode::plane_stress, Mode::plane_strain}) {
    const auto m = plane(mode);
    for (int t = 0; t < 50; ++t) {
      Matrix2 g;
      g << u(rng), u(rng), u(rng), u(rng);
      const Grad ga{{{g(0, 0), g(0, 1)}, {g(1, 0), g(1, 1)}}};
      const StressState st = stress_state(g, m);
      const double ref = 0.5 * (st.sigma.array() * st.epsilon.array()).sum();
      EXPECT_NEAR(strain_energy_density(ga, m), ref, 1e-13);
      EXPECT_GE(strain_energy_density(ga, m), 0.0);
    }
  }
}

struct TestSets {
  geom::Domain domain{geom::DomainSpec{}};
  PointSets points;
  LoadSpec loads;
};

TestSets unit_square(LoadSpec loads) {
  TestSets s;
  s.loads = std::move(loads);
  quad::QuadratureConfig cfg;
  cfg.standard = {8, 4, 2};
  s.points = make_point_sets(s.domain, s.loads, cfg);
  return s;
}

LoadSpec plate_loads(double penalty) {
  LoadSpec l;
  l.body_force = {0.3, -0.2};
  l.tractions.push_back({{geom::Edge::top}, {0.0, 0.1}});
  l.dirichlet.push_back({{geom::Edge::bottom}, {true, true}, {0.0, 0.0}, penalty});
  return l;
}

TEST(Energy, ZeroFieldIsZero) {
  const auto s = unit_square(plate_loads(0.0));
  const auto e = energy_loss<double>([](const quad::QuadraturePoint&) { return FieldSample<double>{}; }, s.points,
                                     s.loads, plane(Mode::plane_stress));
  EXPECT_EQ(e.total(), 0.0);
}

TEST(Energy, PenaltyOnZeroField) {
  LoadSpec l;
  l.dirichlet.push_back({{geom::Edge::bottom}, {true, false}, {0.1, 0.0}, 10.0});
  const auto s = unit_square(l);
  const auto e = energy_loss<double>([](const quad::QuadraturePoint&) { return FieldSample<double>{}; }, s.points,
                                     s.loads, plane(Mode::plane_stress));
  EXPECT_NEAR(e.T, 1.0, 1e-13);
  EXPECT_EQ(e.U, 0.0);
  EXPECT_EQ(e.V, 0.0);
}

TEST(Energy, DefaultPenaltyIsTenE) {
  Dirichlet d;
  EXPECT_EQ(penalty_of(d, ElasticMaterial{3.0, 0.3}), 30.0);
  d.penalty = 2.0;
  EXPECT_EQ(penalty_of(d, ElasticMaterial{3.0, 0.3}), 2.0);
}

TEST(Energy, MissingDirichletPointsRejected) {
  auto s = unit_square(plate_loads(1.0));
  s.points.dirichlet[0].clear();
  EXPECT_THROW(energy_loss<double>([](const quad::QuadraturePoint&) { return FieldSample<double>{}; }, s.points,
                                   s.loads, plane(Mode::plane_stress)),
               Error);
}

TEST(Energy, NaNPropagates) {
  const auto s = unit_square(plate_loads(1.0));
  const auto e = energy_loss<double>(
      [](const quad::QuadraturePoint&) {
        FieldSample<double> f;
        f.grad[0][0] = NAN;
        return f;
      },
      s.points, s.loads, plane(Mode::plane_stress));
  EXPECT_TRUE(std::isnan(e.total()));
}

TEST(Energy, ScalingOfRandomFields) {
  const auto s = unit_square(plate_loads(0.0));
  const auto m = plane(Mode::plane_stress);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 10; ++t) {
    std::array<double, 6> c{};
    for (double& v : c) v = u(rng);
    // u = (c0 x + c1 y + c2 x y, c3 x + c4 y + c5 x^2)
    const auto field = [&](double scale) {
      return [&c, scale](const quad::QuadraturePoint& q) {
        const double x = q.position.x(), y = q.position.y();
        FieldSample<double> f;
        f.u = {scale * (c[0] * x + c[1] * y + c[2] * x * y), scale * (c[3] * x + c[4] * y + c[5] * x * x)};
        f.grad = {{{scale * (c[0] + c[2] * y), scale * (c[1] + c[2] * x)},
                   {scale * (c[3] + 2.0 * c[5] * x), scale * c[4]}}};
        return f;
      };
    };
    const auto e1 = energy_loss<double>(field(1.0), s.points, s.loads, m);
    const auto e2 = energy_loss<double>(field(2.0), s.points, s.loads, m);
    EXPECT_GE(e1.U, 0.0);
    EXPECT_NEAR(e2.U, 4.0 * e1.U, 1e-12);
    EXPECT_NEAR(e2.V, 2.0 * e1.V, 1e-12);
  }
}

TEST(Energy, LinearFieldMatchesClosedForm) {
  // u = (a x, 0) under plane stress: U = E a^2 / (2 (1 - nu^2)) over the unit square.
  const auto s = unit_square(LoadSpec{});
  const double a = 0.01;
  const auto e = energy_loss<double>(
      [a](const quad::QuadraturePoint& q) {
        FieldSample<double> f;
        f.u = {a * q.position.x(), 0.0};
        f.grad[0][0] = a;
        return f;
      },
      s.points, s.loads, plane(Mode::plane_stress));
  EXPECT_NEAR(e.U, a * a / (2.0 * (1.0 - 0.09)), 1e-15);
}

double bar_energy(quad::Method method) {
  auto p = problems::builtin("bar1d", true);
  p.quadrature.method = method;
  p.quadrature.udipm = {1000, 0};
  const auto setup = problems::prepare(p);
  const problems::BarParams bp;
  const auto e = energy_loss<double>(
      [&](const quad::QuadraturePoint& q) {
        FieldSample<double> f;
        f.u[0] = problems::bar_1d_analytic(q.position.x(), bp, q.tag.side);
        f.grad[0][0] = problems::bar_1d_analytic_derivative(q.position.x(), bp, q.tag.side);
        return f;
      },
      setup.points, p.loads, p.material);
  EXPECT_NEAR(e.T, 0.0, 1e-12);
  return e.total();
}

TEST(Energy, AnalyticBarFieldCtm) { EXPECT_NEAR(bar_energy(quad::Method::ctm), -6.86667, 1e-3); }

TEST(Energy, AnalyticBarFieldUdipm) { EXPECT_NEAR(bar_energy(quad::Method::udipm), -6.86667, 1e-2); }

TEST(Loads, OverlapAndNegativePenaltyRejected) {
  geom::DomainSpec d;
  LoadSpec l;
  l.tractions.push_back({{geom::Edge::bottom, 0.0, 0.6}, {0.0, 1.0}});
  l.dirichlet.push_back({{geom::Edge::bottom, 0.5, 1.0}, {true, true}, {}, -1.0});
  const auto msgs = validate(l, d);
  EXPECT_GE(msgs.size(), 2u);
  l.tractions[0].segment.to = 0.5;
  l.dirichlet[0].penalty = 1.0;
  EXPECT_TRUE(validate(l, d).empty());
}

}  // namespace
