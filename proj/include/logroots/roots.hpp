#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "logroots/log_complex.hpp"
#include "logroots/majorant.hpp"

namespace logroots {

/// A point of the complex plane in log-polar coordinates.
struct LogPoint {
  double log_r = 0.0;
  double arg = 0.0;
  bool operator==(const LogPoint&) const = default;
};

/// Thrown when a contour passes too close to a root for its winding number to
/// be trusted.
class ContourGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// sum_j coeffs[j] z^j evaluated in log-domain. Terms are shifted by the
/// largest term log-modulus before summation, so only the relative size of
/// the terms matters. Exact cancellation yields log_mod == -inf.
LogComplex eval_log_scaled(std::span<const LogComplex> coeffs, LogPoint z);

/// Parameters of a certified two-term cancellation ring.
struct LemmaCertificate {
  double delta;  ///< half-width of the ring in log-radius
  double zeta;   ///< half-width of each sector in argument
};

/// Checks the Rouche conditions for a Newton-polygon segment spanning `span`
/// indices of a degree-`degree` polynomial whose other terms lie at least `h`
/// below the segment line:
///   degree e^{delta degree - h} < 1 - e^{-delta},
///   2 degree e^{2 delta degree - h} < zeta < pi / span.
/// delta is the largest value, at most 8, with degree e^{delta degree - h} <=
/// (1-e^{-delta})/2 and 2 degree e^{2 delta degree - h} <= pi / (4 span), or the
/// smallest ring-admissible value if that set is empty. zeta is pi / (2 span)
/// when that clears the lower bound by a factor 2, else the geometric mean of
/// the admissible interval. Returns nothing when no delta works (including h <= 0).
std::optional<LemmaCertificate> check_main_lemma(std::size_t degree, std::size_t span, double h);

/// Same, for a segment of the Newton polygon of `coeffs`.
std::optional<LemmaCertificate> check_main_lemma(std::span<const LogComplex> coeffs,
                                                 const Segment& segment, double h);

/// Sector-ring box around one predicted root.
struct RootBox {
  std::size_t segment_index = 0;
  std::size_t m = 0;           ///< 1..span
  double log_r_center = 0.0;   ///< R of the segment
  double delta = 0.0;
  double phase_center = 0.0;   ///< (phi + 2 pi m) / span, wrapped to (-pi, pi]
  double zeta = 0.0;

  bool contains(LogPoint z) const;
};

/// Per-segment data of a prediction.
struct SegmentPrediction {
  std::size_t k = 0;  ///< left vertex index (coefficient index)
  std::size_t l = 0;  ///< right vertex index
  double R = 0.0;     ///< log of the predicted root radius
  double phi = 0.0;   ///< arg(-a_k / a_l)
  double h = 0.0;     ///< Rouche gap
  bool certified = false;
  std::optional<LemmaCertificate> certificate;
  /// Sign-change flags for real coefficients: a positive (eps_plus) or
  /// negative (eps_minus) real root near exp(R) / -exp(R).
  std::optional<int> eps_plus;
  std::optional<int> eps_minus;

  std::size_t span() const { return l - k; }
};

struct RootPrediction {
  std::size_t degree = 0;
  Majorant newton_polygon;
  std::vector<SegmentPrediction> segments;
  std::vector<RootBox> boxes;  ///< boxes of certified segments only

  bool all_certified() const;
  std::size_t certified_root_count() const;
};

/// Newton-polygon root localization with Rouche certificates.
///
/// The polygon is the upper hull of (k, log|a_k|) over the nonzero
/// coefficients, so the first and last segments start at the actual end
/// coefficients. Every certified segment contributes span() boxes, each
/// containing exactly one root.
RootPrediction predict_root_boxes(std::span<const LogComplex> coeffs);

/// Closed polyline in (log|z|, arg z) coordinates whose image in the z-plane
/// is closed: the first and last points map to the same z.
using Contour = std::vector<LogPoint>;

Contour circle_contour(double log_r);
Contour box_contour(const RootBox& box);

/// Number of roots enclosed by the counter-clockwise contour, by accumulating
/// the argument of the polynomial along the sampled contour. Sampling doubles
/// per edge until consecutive samples differ by less than pi/4 in argument.
/// Throws ContourGuardError when the polynomial nearly vanishes on the
/// contour or the accumulated phase is not close to a multiple of 2 pi.
int winding_count(std::span<const LogComplex> coeffs, const Contour& contour,
                  std::size_t samples_per_edge = 64);

/// Roots with log_r1 < log|z| < log_r2.
int count_roots_annulus(std::span<const LogComplex> coeffs, double log_r1, double log_r2);

struct DirectSolveOptions {
  std::size_t max_degree = 128;
  std::size_t max_sweeps = 500;
  double range = 300.0;  ///< allowed |log|a_k| - centre| for nonzero coefficients
};

/// All roots by Aberth-Ehrlich simultaneous iteration (Gauss-Seidel updates,
/// Newton corrections computed with the same max-term shift as
/// eval_log_scaled). Zero roots from vanishing low coefficients are returned
/// with log_r = -inf.
std::vector<LogPoint> solve_roots_direct(std::span<const LogComplex> coeffs,
                                         const DirectSolveOptions& options = {});

struct RealRootPrediction {
  int sign;  ///< +1 or -1
  double log_r;
  std::size_t segment;
  bool certified;
};

/// One entry per segment flag; coefficients must all be real.
std::vector<RealRootPrediction> predict_real_roots(std::span<const LogComplex> coeffs);

/// Roots of a_tau z^tau + a_0 = 0 and a_n z^(n-tau) + a_tau = 0, where tau is the
/// unique index of the largest coefficient modulus.
struct SurrogateRoots {
  std::size_t tau = 0;
  std::vector<LogPoint> first_block;
  std::vector<LogPoint> second_block;
};

SurrogateRoots surrogate_roots_alpha0(std::span<const LogComplex> coeffs);

/// Number of real solutions of the two-term equation a z^e + b = 0 (e >= 0),
/// for real a, b with the given signs.
int two_term_real_roots(int sign_a, int sign_b, std::size_t exponent);

/// Number of real solutions of (a_tau z^tau + a_0)(a_n z^(n-tau) + a_tau) = 0.
int factorized_real_root_count(int sign_0, int sign_tau, int sign_n, std::size_t tau,
                               std::size_t n);

}  // namespace logroots
