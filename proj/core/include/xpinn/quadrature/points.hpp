#pragma once

#include "xpinn/common.hpp"
#include "xpinn/geometry/domain.hpp"

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace xpinn::quad {

struct QuadraturePoint {
  Vec2 position = Vec2::Zero();  ///< y = 0 in 1D
  double weight = 0.0;
  geom::RegionTag tag;
};

/// Ray layout for CTM. Outer direction: `n_rays` ray levels in total, grouped
/// into round(n_rays / gauss_order) outer intervals of `gauss_order` Gauss
/// levels. Along each ray, every inside interval gets `subintervals` composite
/// pieces of `gauss_order` points. In 1D only `subintervals` and `gauss_order` apply.
struct CtmConfig {
  int n_rays = 64;
  int gauss_order = 4;
  int subintervals = 10;
};

/// Cell-centered uniform points; weight = cell area (or length in 1D).
struct UdipmConfig {
  int standard_points = 1000;  ///< over the bounding box (or bar)
  int enriched_points = 200;   ///< per crack side
};

enum class Method { ctm, udipm };
std::string to_string(Method m);
Method parse_method(const std::string& s);

struct BoundaryConfig {
  int gauss_order = 4;
  int subintervals = 20;
};

struct QuadratureConfig {
  Method method = Method::ctm;
  CtmConfig standard;
  CtmConfig enriched{16, 4, 10};  ///< n_rays counts levels per crack side
  UdipmConfig udipm;
  BoundaryConfig boundary;
};

/// Standard-region points followed by enriched points, crack by crack, negative side first.
std::vector<QuadraturePoint> domain_points(const geom::Domain& domain, const QuadratureConfig& cfg);

/// Composite Gauss points on a boundary segment, skipping parts inside holes.
/// In 1D a single point of weight 1 at the bar end.
std::vector<QuadraturePoint> boundary_points(const geom::Domain& domain, const geom::BoundarySegment& seg,
                                             const BoundaryConfig& cfg);

std::vector<QuadraturePoint> ctm_points(const geom::Domain& domain, const CtmConfig& standard,
                                        const CtmConfig& enriched);
/// Same layout for both partitions.
std::vector<QuadraturePoint> ctm_points(const geom::Domain& domain, const CtmConfig& cfg);

std::vector<QuadraturePoint> udipm_points(const geom::Domain& domain, const UdipmConfig& cfg);
/// n cell-centered points on [a, b], weight (b - a) / n each, standard tags.
std::vector<QuadraturePoint> udipm_points(double a, double b, int n);

using PointFunction = std::function<double(const QuadraturePoint&)>;

/// Weighted sum with fixed-order pairwise summation. Evaluation errors are
/// rethrown with the point index prepended, keeping their type.
double integrate(std::span<const QuadraturePoint> points, const PointFunction& f);

/// Pairwise (cascade) summation of a sequence.
double pairwise_sum(std::span<const double> v);

double total_weight(std::span<const QuadraturePoint> points);

/// CSV with header x,y,weight,region,crack,side; 17 significant digits.
void write_points_csv(std::ostream& out, std::span<const QuadraturePoint> points);
void write_points_csv(const std::string& path, std::span<const QuadraturePoint> points);

}  // namespace xpinn::quad
