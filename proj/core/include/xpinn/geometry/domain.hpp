#pragma once

// Problem domains: a bounding rectangle (or a bar interval in 1D) with circular
// holes and straight cracks, plus the point classification that decides which
// enriched network, if any, sees a point.

#include "xpinn/common.hpp"
#include "xpinn/enrichment/enrichment.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace xpinn::geom {

struct Rect {
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double area() const { return width() * height(); }
  bool contains(const Vec2& p) const { return p.x() >= xmin && p.x() <= xmax && p.y() >= ymin && p.y() <= ymax; }
};

/// Full circle; a notch is a circle whose center sits on the bounding box edge.
struct Circle {
  Vec2 center = Vec2::Zero();
  double radius = 0.0;
};

struct Crack {
  int id = 0;
  Vec2 tip1 = Vec2::Zero();
  Vec2 tip2 = Vec2::Zero();
  double l0 = 0.1;
  /// Edge crack: the midpoint lies on the domain boundary and the enrichment
  /// rectangle is clipped to the material.
  bool edge = false;

  enrichment::CrackLocalFrame frame() const { return {tip1, tip2, l0}; }
};

/// Crack of a 1D bar at x0 with enrichment support [x0 - l0, x0 + l0].
struct BarCrack {
  int id = 0;
  double x0 = 0.3;
  double l0 = 0.1;
};

struct DomainSpec {
  int dimension = 2;
  Rect bounds;  ///< 1D bars use [xmin, xmax]
  std::vector<Circle> holes;
  std::vector<Crack> cracks;
  std::vector<BarCrack> bar_cracks;

  double extent() const;  ///< max(width, height) in 2D, length in 1D
};

struct RegionTag {
  enum class Kind { standard, enriched };
  Kind kind = Kind::standard;
  int crack = -1;  ///< crack index in the spec (not the id) when enriched
  Side side = Side::none;

  bool enriched() const { return kind == Kind::enriched; }
  friend bool operator==(const RegionTag&, const RegionTag&) = default;
};

enum class Edge { left, right, bottom, top };

/// Part of one bounding-box edge, parameterized by the coordinate along the
/// edge (y for left/right, x for bottom/top). Infinite ends mean the full edge.
/// In 1D only left (x = xmin) and right (x = xmax) apply.
struct BoundarySegment {
  Edge edge = Edge::bottom;
  double from = -INFINITY;
  double to = INFINITY;
};

std::string to_string(Edge e);
Edge parse_edge(const std::string& s);

/// Corners (xi1, eta1 - l0), (xi2, eta1 - l0), (xi2, eta1 + l0), (xi1, eta1 + l0) in global coordinates.
/// Throws Error for l0 <= 0 or coincident tips.
std::array<Vec2, 4> enrichment_rectangle(const Crack& crack);

/// Every violated invariant as a readable message; empty means valid.
std::vector<std::string> validate(const DomainSpec& spec);

bool inside_material(const Vec2& p, const DomainSpec& spec);

/// Throws DomainError for points outside the bounding box or inside a hole.
/// On a crack line the side is `none`.
RegionTag classify(const Vec2& p, const DomainSpec& spec);

/// Validated domain with cached crack frames.
class Domain {
 public:
  /// Throws ConfigError listing all violations.
  explicit Domain(DomainSpec spec);

  const DomainSpec& spec() const { return spec_; }
  int dimension() const { return spec_.dimension; }
  const std::vector<enrichment::CrackLocalFrame>& frames() const { return frames_; }
  std::size_t crack_count() const;

  bool inside_material(const Vec2& p) const { return geom::inside_material(p, spec_); }
  RegionTag classify(const Vec2& p) const;

 private:
  DomainSpec spec_;
  std::vector<enrichment::CrackLocalFrame> frames_;
};

}  // namespace xpinn::geom
