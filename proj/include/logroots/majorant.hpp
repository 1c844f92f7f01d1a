#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace logroots {

struct PlanarPoint {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const PlanarPoint&) const = default;
};

/// Affine piece t -> S - R t of a majorant on [x_lo, x_hi].
/// R is the negative of the slope; exp(R) is the radius of the associated
/// circle of roots.
struct Segment {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double S = 0.0;
  double R = 0.0;
  std::size_t lo_vertex = 0;
  std::size_t hi_vertex = 0;

  double width() const { return x_hi - x_lo; }
};

/// Least concave majorant: vertices left to right and the segments joining
/// consecutive vertices. Slopes strictly decrease (R strictly increases).
struct Majorant {
  std::vector<PlanarPoint> vertices;
  std::vector<Segment> segments;
  double x_min = 0.0;
  double x_max = 0.0;

  std::size_t segment_count() const { return segments.size(); }
  /// True when the first and last vertices are (0,0) and (x_max,0).
  bool is_pinned() const;
};

/// Upper concave hull of `points` over [min x, max x], with no filtering.
/// Ties in x keep the larger y; vertices on a hull edge (within a relative
/// tolerance of 1e-12) are dropped.
Majorant upper_hull(std::span<const PlanarPoint> points);

/// Least concave nonnegative majorant on [0, x_max].
/// Points with y <= 0 are discarded. With `pin_zero_endpoints` the points
/// (0,0) and (x_max,0) are added, which is the majorant of a nonnegative
/// concave function on [0, x_max]; otherwise the domain is the x-range of
/// the retained points.
Majorant least_concave_majorant(std::span<const PlanarPoint> points, double x_max,
                                bool pin_zero_endpoints);

/// Value of the majorant at t (throws outside the domain).
double evaluate(const Majorant& m, double t);

/// Index of the segment containing t (the left one at a shared vertex).
std::size_t segment_index_at(const Majorant& m, double t);

enum class GapMode {
  /// Candidates are the points with their raw heights (the Rouche gap of a
  /// coefficient Newton polygon).
  Raw,
  /// Heights are replaced by max(y, 0): every candidate abscissa also carries
  /// the zero baseline.
  Baseline,
};

/// h = min over candidate points (excluding the abscissae of the two segment
/// vertices) of S_i - R_i x - y. Returns +inf when there is no candidate.
double segment_gap(const Majorant& m, std::span<const PlanarPoint> points, std::size_t i,
                   GapMode mode);

enum class WindowMode { Window, Interior };

struct Diagnostics {
  double H;  ///< minimal gap over the selected segments
  double L;  ///< minimal width over the selected segments
};

/// Segments q' <= i < q'' with x_{q'} <= kappa x_max < x_{q'+1} and
/// x_{q''-1} < (1-kappa) x_max <= x_{q''}. Interior mode keeps q' < i < q''-1.
/// Returns [first, last) segment indices.
std::pair<std::size_t, std::size_t> window_segments(const Majorant& m, double kappa,
                                                    WindowMode mode);

/// Gap and width functionals over the window; (+inf, +inf) for an empty selection.
Diagnostics diagnostics(const Majorant& m, std::span<const PlanarPoint> points, double kappa,
                        WindowMode mode, GapMode gap_mode = GapMode::Baseline);

}  // namespace logroots
