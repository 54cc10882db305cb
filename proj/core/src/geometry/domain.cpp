#include "xpinn/geometry/domain.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace xpinn::geom {

std::string to_string(Edge e) {
  switch (e) {
    case Edge::left: return "left";
    case Edge::right: return "right";
    case Edge::bottom: return "bottom";
    case Edge::top: return "top";
  }
  return "?";
}

Edge parse_edge(const std::string& s) {
  if (s == "left") return Edge::left;
  if (s == "right") return Edge::right;
  if (s == "bottom") return Edge::bottom;
  if (s == "top") return Edge::top;
  throw ConfigError("unknown edge '" + s + "' (expected left, right, bottom or top)");
}

double DomainSpec::extent() const {
  return dimension == 1 ? bounds.width() : std::max(bounds.width(), bounds.height());
}

std::array<Vec2, 4> enrichment_rectangle(const Crack& c) {
  const auto f = c.frame();
  const double lo = f.eta1() - f.l0();
  const double hi = f.eta1() + f.l0();
  return {f.to_global({f.xi1(), lo}), f.to_global({f.xi2(), lo}), f.to_global({f.xi2(), hi}),
          f.to_global({f.xi1(), hi})};
}

namespace {

std::string crack_name(const Crack& c) { return "crack " + std::to_string(c.id); }

// Separating-axis test for two convex quadrilaterals; touching does not count.
bool quads_overlap(const std::array<Vec2, 4>& a, const std::array<Vec2, 4>& b, double tol) {
  for (const auto* poly : {&a, &b}) {
    for (int i = 0; i < 4; ++i) {
      const Vec2 e = (*poly)[(i + 1) % 4] - (*poly)[i];
      const Vec2 n{-e.y(), e.x()};
      const double scale = n.norm();
      if (scale == 0.0) continue;
      double amin = INFINITY, amax = -INFINITY, bmin = INFINITY, bmax = -INFINITY;
      for (const Vec2& p : a) {
        const double s = n.dot(p) / scale;
        amin = std::min(amin, s);
        amax = std::max(amax, s);
      }
      for (const Vec2& p : b) {
        const double s = n.dot(p) / scale;
        bmin = std::min(bmin, s);
        bmax = std::max(bmax, s);
      }
      if (amax <= bmin + tol || bmax <= amin + tol) return false;
    }
  }
  return true;
}

bool on_box_edge(const Vec2& p, const Rect& r, double tol) {
  const bool in_x = p.x() >= r.xmin - tol && p.x() <= r.xmax + tol;
  const bool in_y = p.y() >= r.ymin - tol && p.y() <= r.ymax + tol;
  return (in_y && (std::abs(p.x() - r.xmin) <= tol || std::abs(p.x() - r.xmax) <= tol)) ||
         (in_x && (std::abs(p.y() - r.ymin) <= tol || std::abs(p.y() - r.ymax) <= tol));
}

bool box_contains(const Rect& r, const Vec2& p, double tol) {
  return p.x() >= r.xmin - tol && p.x() <= r.xmax + tol && p.y() >= r.ymin - tol && p.y() <= r.ymax + tol;
}

void validate_1d(const DomainSpec& s, std::vector<std::string>& out) {
  if (!s.holes.empty()) out.emplace_back("1D domain cannot have holes");
  if (!s.cracks.empty()) out.emplace_back("1D domain cannot have 2D cracks; use bar_cracks");
  std::set<int> ids;
  for (const BarCrack& c : s.bar_cracks) {
    const std::string name = "bar crack " + std::to_string(c.id);
    if (!ids.insert(c.id).second) out.push_back(name + ": duplicate id");
    if (!(c.l0 > 0.0)) out.push_back(name + ": l0 must be positive");
    if (c.x0 - c.l0 < s.bounds.xmin || c.x0 + c.l0 > s.bounds.xmax)
      out.push_back(name + ": enrichment support [x0 - l0, x0 + l0] leaves the bar");
  }
  for (std::size_t i = 0; i < s.bar_cracks.size(); ++i)
    for (std::size_t j = i + 1; j < s.bar_cracks.size(); ++j) {
      const auto& a = s.bar_cracks[i];
      const auto& b = s.bar_cracks[j];
      if (std::abs(a.x0 - b.x0) < a.l0 + b.l0)
        out.push_back("bar cracks " + std::to_string(a.id) + " and " + std::to_string(b.id) +
                      ": enrichment supports overlap");
    }
}

void validate_2d(const DomainSpec& s, std::vector<std::string>& out) {
  const Rect& r = s.bounds;
  const double tol = 1e-9 * s.extent();
  if (!s.bar_cracks.empty()) out.emplace_back("2D domain cannot have bar cracks");
  for (std::size_t i = 0; i < s.holes.size(); ++i) {
    const Circle& h = s.holes[i];
    const std::string name = "hole " + std::to_string(i);
    if (!(h.radius > 0.0)) {
      out.push_back(name + ": radius must be positive");
      continue;
    }
    if (!box_contains(r, h.center, tol)) {
      out.push_back(name + ": center outside the bounding rectangle");
      continue;
    }
    const bool fits = h.center.x() - h.radius >= r.xmin - tol && h.center.x() + h.radius <= r.xmax + tol &&
                      h.center.y() - h.radius >= r.ymin - tol && h.center.y() + h.radius <= r.ymax + tol;
    if (!fits && !on_box_edge(h.center, r, tol))
      out.push_back(name + ": crosses the bounding rectangle without being an edge notch");
  }
  for (std::size_t i = 0; i < s.holes.size(); ++i)
    for (std::size_t j = i + 1; j < s.holes.size(); ++j)
      if ((s.holes[i].center - s.holes[j].center).norm() < s.holes[i].radius + s.holes[j].radius)
        out.push_back("holes " + std::to_string(i) + " and " + std::to_string(j) + " overlap");

  std::set<int> ids;
  std::vector<std::pair<std::size_t, std::array<Vec2, 4>>> rects;
  for (std::size_t i = 0; i < s.cracks.size(); ++i) {
    const Crack& c = s.cracks[i];
    const std::string name = crack_name(c);
    if (!ids.insert(c.id).second) out.push_back(name + ": duplicate id");
    bool ok = true;
    if ((c.tip2 - c.tip1).norm() == 0.0) {
      out.push_back(name + ": tips coincide");
      ok = false;
    }
    if (!(c.l0 > 0.0)) {
      out.push_back(name + ": l0 must be positive (zero-height enrichment rectangle)");
      ok = false;
    }
    if (c.edge) {
      const Vec2 mid = 0.5 * (c.tip1 + c.tip2);
      bool on_boundary = on_box_edge(mid, r, tol);
      for (const Circle& h : s.holes)
        on_boundary = on_boundary || std::abs((mid - h.center).norm() - h.radius) <= tol;
      if (!on_boundary) out.push_back(name + ": edge crack midpoint does not lie on the domain boundary");
      if (!inside_material(c.tip1, s) && !inside_material(c.tip2, s))
        out.push_back(name + ": edge crack has no tip inside the material");
    } else {
      for (const Vec2* t : {&c.tip1, &c.tip2})
        if (!box_contains(r, *t, 0.0)) {
          out.push_back(name + ": tip outside the bounding box");
        } else if (!inside_material(*t, s)) {
          out.push_back(name + ": tip inside a hole");
        }
    }
    if (!ok) continue;
    const auto quad = enrichment_rectangle(c);
    if (!c.edge)
      for (const Vec2& q : quad)
        if (!box_contains(r, q, tol)) {
          out.push_back(name + ": enrichment rectangle leaves the bounding box");
          break;
        }
    rects.emplace_back(i, quad);
  }
  for (std::size_t a = 0; a < rects.size(); ++a)
    for (std::size_t b = a + 1; b < rects.size(); ++b)
      if (quads_overlap(rects[a].second, rects[b].second, tol))
        out.push_back("cracks " + std::to_string(s.cracks[rects[a].first].id) + " and " +
                      std::to_string(s.cracks[rects[b].first].id) + ": enrichment rectangles overlap");
}

RegionTag classify_with(const Vec2& p, const DomainSpec& s, const std::vector<enrichment::CrackLocalFrame>& frames) {
  if (s.dimension == 1) {
    if (p.x() < s.bounds.xmin || p.x() > s.bounds.xmax) throw DomainError("point outside the bar");
    for (std::size_t i = 0; i < s.bar_cracks.size(); ++i) {
      const BarCrack& c = s.bar_cracks[i];
      if (p.x() >= c.x0 - c.l0 && p.x() <= c.x0 + c.l0) {
        const Side side = p.x() > c.x0 ? Side::positive : p.x() < c.x0 ? Side::negative : Side::none;
        return {RegionTag::Kind::enriched, static_cast<int>(i), side};
      }
    }
    return {};
  }
  if (!inside_material(p, s)) {
    std::ostringstream msg;
    msg << "point (" << p.x() << ", " << p.y() << ") lies outside the material domain";
    throw DomainError(msg.str());
  }
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const Vec2 q = frames[i].to_local(p);
    if (frames[i].contains_local(q)) {
      const double d = q.y() - frames[i].eta1();
      const Side side = d > 0.0 ? Side::positive : d < 0.0 ? Side::negative : Side::none;
      return {RegionTag::Kind::enriched, static_cast<int>(i), side};
    }
  }
  return {};
}

std::vector<enrichment::CrackLocalFrame> make_frames(const DomainSpec& s) {
  std::vector<enrichment::CrackLocalFrame> frames;
  frames.reserve(s.cracks.size());
  for (const Crack& c : s.cracks) frames.push_back(c.frame());
  return frames;
}

}  // namespace

std::vector<std::string> validate(const DomainSpec& s) {
  std::vector<std::string> out;
  if (s.dimension != 1 && s.dimension != 2) {
    out.emplace_back("dimension must be 1 or 2");
    return out;
  }
  if (!(s.bounds.xmin < s.bounds.xmax)) out.emplace_back("bounds: xmin must be below xmax");
  if (s.dimension == 2 && !(s.bounds.ymin < s.bounds.ymax)) out.emplace_back("bounds: ymin must be below ymax");
  if (!out.empty()) return out;
  if (s.dimension == 1)
    validate_1d(s, out);
  else
    validate_2d(s, out);
  return out;
}

bool inside_material(const Vec2& p, const DomainSpec& s) {
  if (s.dimension == 1) return p.x() >= s.bounds.xmin && p.x() <= s.bounds.xmax;
  if (!s.bounds.contains(p)) return false;
  for (const Circle& h : s.holes)
    if ((p - h.center).squaredNorm() < h.radius * h.radius) return false;
  return true;
}

RegionTag classify(const Vec2& p, const DomainSpec& s) { return classify_with(p, s, make_frames(s)); }

Domain::Domain(DomainSpec spec) : spec_(std::move(spec)) {
  const auto violations = validate(spec_);
  if (!violations.empty()) {
    std::string msg = "invalid domain:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw ConfigError(msg);
  }
  frames_ = make_frames(spec_);
}

std::size_t Domain::crack_count() const {
  return spec_.dimension == 1 ? spec_.bar_cracks.size() : spec_.cracks.size();
}

RegionTag Domain::classify(const Vec2& p) const { return classify_with(p, spec_, frames_); }

}  // namespace xpinn::geom
