#include "xpinn/enrichment/enrichment.hpp"
#include "xpinn/problems/problem.hpp"
#include "xpinn/quadrature/gauss_legendre.hpp"
#include "xpinn/quadrature/points.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

namespace {

using namespace xpinn;
using namespace xpinn::quad;

geom::Domain unit_square() { return geom::Domain(geom::DomainSpec{}); }

geom::Domain square_with_hole(double r) {
  geom::DomainSpec s;
  s.holes.push_back({{0.5, 0.5}, r});
  return geom::Domain(s);
}

TEST(GaussLegendre, LowOrders) {
  const auto& g1 = gauss_legendre(1);
  ASSERT_EQ(g1.nodes.size(), 1u);
  EXPECT_EQ(g1.nodes[0], 0.0);
  EXPECT_EQ(g1.weights[0], 2.0);
  const auto& g2 = gauss_legendre(2);
  EXPECT_NEAR(g2.nodes[0], -1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(g2.nodes[1], 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(g2.weights[0], 1.0, 1e-15);
  EXPECT_NEAR(g2.weights[1], 1.0, 1e-15);
}

TEST(GaussLegendre, UnsupportedOrder) {
  EXPECT_THROW(gauss_legendre(0), Error);
  EXPECT_THROW(gauss_legendre(kMaxGaussOrder + 1), Error);
}

class GaussOrder : public ::testing::TestWithParam<int> {};

TEST_P(GaussOrder, ExactForDegreeTwoMMinusOne) {
  const int m = GetParam();
  const auto& g = gauss_legendre(m);
  double wsum = 0.0;
  for (double w : g.weights) wsum += w;
  EXPECT_NEAR(wsum, 2.0, 1e-13);
  for (int k = 0; k <= 2 * m - 1; ++k) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += g.weights[i] * std::pow(g.nodes[i], k);
    const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
    EXPECT_NEAR(s, exact, 1e-12) << "m=" << m << " k=" << k;
  }
  for (int i = 1; i < m; ++i) EXPECT_LT(g.nodes[i - 1], g.nodes[i]);
}

INSTANTIATE_TEST_SUITE_P(Orders, GaussOrder, ::testing::Range(1, kMaxGaussOrder + 1));

TEST(Ctm, UnitSquareArea) {
  const auto d = unit_square();
  const auto pts = ctm_points(d, CtmConfig{16, 4, 4});
  EXPECT_NEAR(total_weight(pts), 1.0, 1e-12);
  const double x2 = integrate(pts, [](const QuadraturePoint& p) { return p.position.x() * p.position.x(); });
  EXPECT_NEAR(x2, 1.0 / 3.0, 1e-10);
}

TEST(Ctm, CircularHoleArea) {
  const auto d = square_with_hole(0.2);
  const double exact = 1.0 - 0.04 * std::numbers::pi;
  EXPECT_NEAR(total_weight(ctm_points(d, CtmConfig{64, 4, 10})), exact, 1e-3);
  double prev = INFINITY;
  for (int rays : {64, 128, 256, 512}) {
    const double err = std::abs(total_weight(ctm_points(d, CtmConfig{rays, 4, 10})) - exact);
    EXPECT_LT(err, prev) << rays;
    prev = err;
  }
}

TEST(Ctm, PointsAvoidHolesAndCrackLines) {
  const auto p = problems::builtin("edge_crack_hole", true);
  const geom::Domain d(p.domain);
  const auto pts = domain_points(d, p.quadrature);
  const double clear = 1e-9 * p.domain.extent();
  const auto f = d.frames()[0];
  for (const auto& q : pts) {
    EXPECT_GT(q.weight, 0.0);
    EXPECT_TRUE(d.inside_material(q.position));
    EXPECT_GT((q.position - p.domain.holes[0].center).norm() - p.domain.holes[0].radius, clear);
    const Vec2 l = f.to_local(q.position);
    if (q.tag.enriched()) EXPECT_GT(std::abs(l.y() - f.eta1()), clear);
    // Tags agree with reclassification.
    EXPECT_EQ(d.classify(q.position), q.tag);
  }
}

TEST(Ctm, TagsMatchClassificationOnMultiCrack) {
  const auto p = problems::builtin("multi_crack", true);
  const geom::Domain d(p.domain);
  const auto pts = domain_points(d, p.quadrature);
  std::array<int, 4> per_crack{};
  for (const auto& q : pts) {
    ASSERT_EQ(d.classify(q.position), q.tag);
    if (q.tag.enriched()) ++per_crack[static_cast<std::size_t>(q.tag.crack)];
  }
  for (int n : per_crack) EXPECT_GT(n, 0);
  EXPECT_NEAR(total_weight(pts), 1.0, 1e-9);
}

TEST(Ctm, EnrichmentIntegratesToZero) {
  const auto p = problems::builtin("center_crack", true);
  const geom::Domain d(p.domain);
  const auto pts = domain_points(d, p.quadrature);
  const auto& f = d.frames()[0];
  const double s = integrate(pts, [&](const QuadraturePoint& q) {
    return q.tag.enriched() ? enrichment::enrichment_2d(q.position, f, q.tag.side).value : 0.0;
  });
  EXPECT_NEAR(s, 0.0, 1e-12);
}

TEST(Ctm, AdditivityOverPartitions) {
  const auto p = problems::builtin("two_crack", true);
  const geom::Domain d(p.domain);
  const auto pts = domain_points(d, p.quadrature);
  const auto f = [](const QuadraturePoint& q) { return std::exp(q.position.x()) * (1.0 + q.position.y()); };
  double parts = 0.0;
  for (int tag = -1; tag < 2; ++tag) {
    std::vector<QuadraturePoint> sub;
    for (const auto& q : pts)
      if (q.tag.crack == tag) sub.push_back(q);
    parts += integrate(sub, f);
  }
  // Exact integral of e^x (1 + y) over the unit square.
  EXPECT_NEAR(parts, integrate(pts, f), 1e-12);
  EXPECT_NEAR(integrate(pts, f), (std::exp(1.0) - 1.0) * 1.5, 1e-6);
}

TEST(Ctm, BarBreakpointsGiveFiftyPoints) {
  const auto p = problems::builtin("bar1d", true);
  const geom::Domain d(p.domain);
  const auto pts = domain_points(d, p.quadrature);
  EXPECT_EQ(pts.size(), 50u);
  EXPECT_NEAR(total_weight(pts), 1.0, 1e-14);
  for (const auto& q : pts) EXPECT_EQ(q.tag.enriched(), q.position.x() > 0.2 && q.position.x() < 0.4);
}

TEST(Ctm, InvalidConfig) { EXPECT_THROW(ctm_points(unit_square(), CtmConfig{0, 4, 4}), ConfigError); }

TEST(Udipm, ConstantAndLinear1d) {
  const auto pts = udipm_points(0.0, 1.0, 50);
  ASSERT_EQ(pts.size(), 50u);
  EXPECT_NEAR(total_weight(pts), 1.0, 1e-14);
  for (int n : {10, 100, 1000}) {
    const auto q = udipm_points(0.0, 1.0, n);
    EXPECT_NEAR(integrate(q, [](const QuadraturePoint& p) { return p.position.x(); }), 0.5, 1.0 / n);
  }
  EXPECT_THROW(udipm_points(0.0, 1.0, 0), Error);
}

TEST(Udipm, EnrichedPointsPerSideOffTheCrackLine) {
  const auto p = problems::builtin("center_crack", true);
  const geom::Domain d(p.domain);
  const auto pts = udipm_points(d, UdipmConfig{2000, 200});
  int neg = 0, pos = 0;
  for (const auto& q : pts) {
    if (!q.tag.enriched()) continue;
    EXPECT_NE(q.position.y(), 0.5);
    (q.tag.side == Side::negative ? neg : pos)++;
  }
  EXPECT_GT(neg, 0);
  EXPECT_EQ(neg, pos);
  EXPECT_NEAR(total_weight(pts), 1.0, 2e-2);
}

TEST(Boundary, SegmentsAndHoleGaps) {
  const auto d = unit_square();
  const auto top = boundary_points(d, {geom::Edge::top}, BoundaryConfig{4, 5});
  EXPECT_EQ(top.size(), 20u);
  EXPECT_NEAR(total_weight(top), 1.0, 1e-14);
  for (const auto& q : top) EXPECT_EQ(q.position.y(), 1.0);
  const auto part = boundary_points(d, {geom::Edge::left, 0.25, 0.75}, BoundaryConfig{4, 5});
  EXPECT_NEAR(total_weight(part), 0.5, 1e-14);

  const auto p = problems::builtin("edge_crack_hole", true);
  const geom::Domain notched(p.domain);
  const auto left = boundary_points(notched, {geom::Edge::left}, BoundaryConfig{4, 20});
  EXPECT_NEAR(total_weight(left), 0.8, 1e-12);
}

TEST(Integrate, EmptyAndSimple) {
  EXPECT_EQ(integrate({}, [](const QuadraturePoint&) { return 1.0; }), 0.0);
  std::vector<QuadraturePoint> two(2);
  two[0].weight = two[1].weight = 0.5;
  EXPECT_EQ(integrate(two, [](const QuadraturePoint&) { return 1.0; }), 1.0);
}

TEST(Integrate, ErrorsCarryPointIndexAndType) {
  std::vector<QuadraturePoint> pts(3);
  try {
    integrate(pts, [&](const QuadraturePoint& q) -> double {
      if (&q == &pts[2]) throw SideRequiredError("needs a side");
      return 1.0;
    });
    FAIL();
  } catch (const SideRequiredError& e) {
    EXPECT_NE(std::string(e.what()).find("2"), std::string::npos);
  }
}

TEST(Integrate, PairwiseSumIsOrderFixed) {
  std::vector<double> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 / static_cast<double>(i + 1);
  const double a = pairwise_sum(v);
  EXPECT_EQ(a, pairwise_sum(v));
  EXPECT_NEAR(a, 7.485470860550345, 1e-12);
}

TEST(Points, CsvHasHeaderAndOneRowPerPoint) {
  const auto pts = ctm_points(unit_square(), CtmConfig{4, 2, 1});
  std::ostringstream out;
  write_points_csv(out, pts);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,y,weight,region,crack,side");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, pts.size());
}

}  // namespace
