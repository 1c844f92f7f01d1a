#include "logroots/majorant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace logroots {

namespace {

constexpr double kRelTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

// True when b is not strictly above the chord a-c (b would not be a vertex).
bool not_right_turn(const PlanarPoint& a, const PlanarPoint& b, const PlanarPoint& c) {
  const double dx1 = b.x - a.x, dy1 = b.y - a.y;
  const double dx2 = c.x - a.x, dy2 = c.y - a.y;
  const double cross = dx1 * dy2 - dy1 * dx2;
  const double scale = std::abs(dx1 * dy2) + std::abs(dy1 * dx2);
  return cross >= -kRelTol * scale;
}

void build_segments(Majorant& m) {
  m.segments.clear();
  for (std::size_t i = 0; i + 1 < m.vertices.size(); ++i) {
    const auto& lo = m.vertices[i];
    const auto& hi = m.vertices[i + 1];
    Segment s;
    s.x_lo = lo.x;
    s.x_hi = hi.x;
    s.R = -(hi.y - lo.y) / (hi.x - lo.x);
    s.S = lo.y + s.R * lo.x;
    s.lo_vertex = i;
    s.hi_vertex = i + 1;
    m.segments.push_back(s);
  }
  m.x_min = m.vertices.front().x;
  m.x_max = m.vertices.back().x;
}

double line_value(const Majorant& m, const Segment& s, double t) {
  return m.vertices[s.lo_vertex].y - s.R * (t - s.x_lo);
}

}  // namespace

bool Majorant::is_pinned() const {
  return !vertices.empty() && vertices.front().x == 0.0 && vertices.front().y == 0.0 &&
         vertices.back().y == 0.0 && vertices.back().x == x_max && x_min == 0.0;
}

Majorant upper_hull(std::span<const PlanarPoint> points) {
  if (points.empty()) throw std::invalid_argument("upper_hull: empty point set");
  std::vector<PlanarPoint> sorted(points.begin(), points.end());
  for (const auto& p : sorted)
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw std::invalid_argument("upper_hull: non-finite coordinate");
  std::sort(sorted.begin(), sorted.end(), [](const PlanarPoint& a, const PlanarPoint& b) {
    return a.x < b.x || (a.x == b.x && a.y > b.y);
  });
  // Keep the highest point of each abscissa.
  sorted.erase(std::unique(sorted.begin(), sorted.end(),
                           [](const PlanarPoint& a, const PlanarPoint& b) { return a.x == b.x; }),
               sorted.end());

  Majorant m;
  auto& hull = m.vertices;
  hull.reserve(sorted.size());
  for (const auto& p : sorted) {
    while (hull.size() >= 2 && not_right_turn(hull[hull.size() - 2], hull.back(), p))
      hull.pop_back();
    hull.push_back(p);
  }
  build_segments(m);
  return m;
}

Majorant least_concave_majorant(std::span<const PlanarPoint> points, double x_max,
                                bool pin_zero_endpoints) {
  if (!(x_max > 0.0)) throw std::invalid_argument("least_concave_majorant: empty domain");
  std::vector<PlanarPoint> kept;
  kept.reserve(points.size() + 2);
  for (const auto& p : points) {
    if (p.x < 0.0 || p.x > x_max)
      throw std::invalid_argument("least_concave_majorant: point outside [0, x_max]");
    if (p.y > 0.0) kept.push_back(p);
  }
  if (pin_zero_endpoints) {
    kept.push_back({0.0, 0.0});
    kept.push_back({x_max, 0.0});
  }
  if (kept.empty())
    throw std::invalid_argument("least_concave_majorant: no positive points and no pinning");
  return upper_hull(kept);
}

std::size_t segment_index_at(const Majorant& m, double t) {
  if (m.segments.empty() || t < m.x_min || t > m.x_max)
    throw std::out_of_range("majorant: t outside the domain");
  auto it = std::lower_bound(m.segments.begin(), m.segments.end(), t,
                             [](const Segment& s, double v) { return s.x_hi < v; });
  if (it == m.segments.end()) --it;
  return static_cast<std::size_t>(it - m.segments.begin());
}

double evaluate(const Majorant& m, double t) {
  if (m.segments.empty()) {
    if (m.vertices.size() == 1 && t == m.vertices.front().x) return m.vertices.front().y;
    throw std::out_of_range("majorant: t outside the domain");
  }
  return line_value(m, m.segments[segment_index_at(m, t)], t);
}

double segment_gap(const Majorant& m, std::span<const PlanarPoint> points, std::size_t i,
                   GapMode mode) {
  if (i >= m.segments.size()) throw std::out_of_range("segment_gap: segment index");
  const Segment& s = m.segments[i];
  double h = kInf;
  for (const auto& p : points) {
    if (p.x == s.x_lo || p.x == s.x_hi) continue;
    const double y = mode == GapMode::Baseline ? std::max(p.y, 0.0) : p.y;
    if (y == -kInf) continue;
    h = std::min(h, line_value(m, s, p.x) - y);
  }
  return h;
}

std::pair<std::size_t, std::size_t> window_segments(const Majorant& m, double kappa,
                                                    WindowMode mode) {
  if (!(kappa > 0.0 && kappa < 0.5))
    throw std::invalid_argument("window_segments: kappa must lie in (0, 1/2)");
  if (m.segments.empty()) return {0, 0};
  const double span = m.x_max - m.x_min;
  const double left = m.x_min + kappa * span;
  const double right = m.x_max - kappa * span;
  const auto& v = m.vertices;
  // q': last vertex with x <= left; q'': first vertex with x >= right.
  std::size_t q1 = 0;
  while (q1 + 1 < v.size() && v[q1 + 1].x <= left) ++q1;
  std::size_t q2 = v.size() - 1;
  while (q2 > 0 && v[q2 - 1].x >= right) --q2;
  std::size_t first = q1, last = q2;
  if (mode == WindowMode::Interior) {
    ++first;
    last = last > 0 ? last - 1 : 0;
  }
  if (first >= last) return {0, 0};
  return {first, last};
}

Diagnostics diagnostics(const Majorant& m, std::span<const PlanarPoint> points, double kappa,
                        WindowMode mode, GapMode gap_mode) {
  const auto [first, last] = window_segments(m, kappa, mode);
  Diagnostics d{kInf, kInf};
  for (std::size_t i = first; i < last; ++i) {
    d.H = std::min(d.H, segment_gap(m, points, i, gap_mode));
    d.L = std::min(d.L, m.segments[i].width());
  }
  return d;
}

}  // namespace logroots
