#include "logroots/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace logroots {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Terms this far (in log) below the largest one cannot change a double sum.
constexpr double kNegligible = -60.0;
constexpr double kMaxDelta = 8.0;

struct ScaledSum {
  double shift = -kInf;         // log of the largest term modulus
  std::complex<double> value;   // sum of terms divided by exp(shift)
  std::complex<double> weighted;  // sum of j * term_j divided by exp(shift)
  double magnitude = 0.0;       // sum of |term_j| divided by exp(shift)
};

// polar() with quarter turns snapped, so real data on the real axis cancels exactly
std::complex<double> phasor(double mag, double phase) {
  const double t = wrap_phase(phase);
  if (t == 0.0) return {mag, 0.0};
  if (t == kPi) return {-mag, 0.0};
  if (t == 0.5 * kPi) return {0.0, mag};
  if (t == -0.5 * kPi) return {0.0, -mag};
  return std::polar(mag, t);
}

ScaledSum scaled_sum(std::span<const LogComplex> coeffs, LogPoint z, bool with_derivative) {
  ScaledSum out;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j].is_zero()) continue;
    out.shift = std::max(out.shift, coeffs[j].log_mod() + static_cast<double>(j) * z.log_r);
  }
  if (out.shift == -kInf) return out;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j].is_zero()) continue;
    const double jd = static_cast<double>(j);
    const double rel = coeffs[j].log_mod() + jd * z.log_r - out.shift;
    if (rel < kNegligible) continue;
    const double mag = std::exp(rel);
    const std::complex<double> term = phasor(mag, coeffs[j].phase() + jd * z.arg);
    out.value += term;
    out.magnitude += mag;
    if (with_derivative) out.weighted += jd * term;
  }
  return out;
}

double log1mexp(double x) {  // log(1 - e^{-x}) for x > 0
  return x < std::numbers::ln2 ? std::log(-std::expm1(-x)) : std::log1p(-std::exp(-x));
}

// Monotone bisection for f(x) = target on [lo, hi] with f(lo), f(hi) bracketing.
template <class F>
double bisect(F f, double lo, double hi, double target, bool increasing) {
  for (int it = 0; it < 300; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const bool above = f(mid) > target;
    if (above == increasing) hi = mid; else lo = mid;
  }
  return 0.5 * (lo + hi);
}

bool all_real(std::span<const LogComplex> coeffs) {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const LogComplex& c) { return c.is_real(); });
}

std::vector<PlanarPoint> coefficient_points(std::span<const LogComplex> coeffs) {
  std::vector<PlanarPoint> pts;
  pts.reserve(coeffs.size());
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    if (!coeffs[j].is_zero()) pts.push_back({static_cast<double>(j), coeffs[j].log_mod()});
  return pts;
}

LogPoint lerp(LogPoint a, LogPoint b, double t) {
  return {a.log_r + t * (b.log_r - a.log_r), a.arg + t * (b.arg - a.arg)};
}

}  // namespace

LogComplex eval_log_scaled(std::span<const LogComplex> coeffs, LogPoint z) {
  if (!std::isfinite(z.log_r) || !std::isfinite(z.arg))
    throw std::invalid_argument("eval_log_scaled: point must be finite");
  const ScaledSum s = scaled_sum(coeffs, z, false);
  if (s.shift == -kInf || s.value == std::complex<double>(0.0, 0.0)) return LogComplex::zero();
  return {s.shift + std::log(std::abs(s.value)), std::arg(s.value)};
}

std::optional<LemmaCertificate> check_main_lemma(std::size_t degree, std::size_t span, double h) {
  if (!(h > 0.0) || degree < 1 || span < 1 || span > degree) return std::nullopt;
  const double n = static_cast<double>(degree);
  const double log_n = std::log(n);
  // g(delta) = log of  n e^{delta n - h} / (1 - e^{-delta}); convex in delta.
  auto g = [&](double d) { return log_n + d * n - h - log1mexp(d); };
  const double d_star = std::log1p(1.0 / n);
  const double g_star = g(d_star);
  if (!(g_star < 0.0)) return std::nullopt;
  const double level = g_star < -std::numbers::ln2 ? -std::numbers::ln2 : 0.5 * g_star;

  double tiny = d_star;
  while (tiny > 1e-300 && g(tiny) <= level) tiny *= 1e-3;
  const double d_lo = tiny <= 1e-300 ? tiny : bisect(g, tiny, d_star, level, false);
  double big = d_star + (h + 50.0) / n + 1.0;
  while (g(big) <= level) big *= 2.0;
  const double d_hi = bisect(g, d_star, big, level, true);

  const double log_sector = std::log(kPi / static_cast<double>(span));
  // 2 n e^{2 delta n - h} = pi / (4 span)
  const double d_zeta = (h + log_sector - std::log(8.0 * n)) / (2.0 * n);
  // Wider rings gain nothing and make the box contours expensive to trace.
  double delta = std::min({d_hi, d_zeta, kMaxDelta});
  if (delta < d_lo) delta = d_lo;
  if (!(delta > 0.0) || !std::isfinite(delta) || !(g(delta) < 0.0)) return std::nullopt;
  const double log_zeta_lo = std::log(2.0 * n) + 2.0 * delta * n - h;
  if (!(log_zeta_lo < log_sector)) return std::nullopt;
  // Half the admissible sector when the lower bound leaves room for it.
  const double log_zeta = log_zeta_lo <= log_sector - std::log(4.0)
                              ? log_sector - std::numbers::ln2
                              : 0.5 * (log_zeta_lo + log_sector);
  return LemmaCertificate{delta, std::exp(log_zeta)};
}

std::optional<LemmaCertificate> check_main_lemma(std::span<const LogComplex> coeffs,
                                                 const Segment& segment, double h) {
  if (coeffs.size() < 2) throw std::invalid_argument("check_main_lemma: degree must be >= 1");
  if (segment.x_lo != std::floor(segment.x_lo) || segment.x_hi != std::floor(segment.x_hi))
    throw std::invalid_argument("check_main_lemma: segment vertices must be integer indices");
  const auto span = static_cast<std::size_t>(segment.x_hi - segment.x_lo);
  return check_main_lemma(coeffs.size() - 1, span, h);
}

bool RootBox::contains(LogPoint z) const {
  return std::abs(z.log_r - log_r_center) < delta && phase_distance(z.arg, phase_center) <= zeta;
}

bool RootPrediction::all_certified() const {
  return !segments.empty() &&
         std::all_of(segments.begin(), segments.end(), [](const auto& s) { return s.certified; });
}

std::size_t RootPrediction::certified_root_count() const {
  std::size_t total = 0;
  for (const auto& s : segments)
    if (s.certified) total += s.span();
  return total;
}

RootPrediction predict_root_boxes(std::span<const LogComplex> coeffs) {
  if (coeffs.size() < 2) throw std::invalid_argument("predict_root_boxes: degree must be >= 1");
  const auto points = coefficient_points(coeffs);
  if (points.empty()) throw std::invalid_argument("predict_root_boxes: all-zero polynomial");

  RootPrediction out;
  out.degree = coeffs.size() - 1;
  out.newton_polygon = upper_hull(points);
  const bool real = all_real(coeffs);
  const auto& hull = out.newton_polygon;
  for (std::size_t i = 0; i < hull.segments.size(); ++i) {
    const Segment& seg = hull.segments[i];
    SegmentPrediction sp;
    sp.k = static_cast<std::size_t>(seg.x_lo);
    sp.l = static_cast<std::size_t>(seg.x_hi);
    sp.R = seg.R;
    sp.phi = wrap_phase(kPi + coeffs[sp.k].phase() - coeffs[sp.l].phase());
    sp.h = segment_gap(hull, points, i, GapMode::Raw);
    sp.certificate = check_main_lemma(out.degree, sp.span(), sp.h);
    sp.certified = sp.certificate.has_value();
    if (real) {
      const int sk = coeffs[sp.k].real_sign(), sl = coeffs[sp.l].real_sign();
      const int pk = sp.k % 2 == 0 ? 1 : -1, pl = sp.l % 2 == 0 ? 1 : -1;
      sp.eps_plus = sk != sl ? 1 : 0;
      sp.eps_minus = pk * sk != pl * sl ? 1 : 0;
    }
    if (sp.certified) {
      const double span = static_cast<double>(sp.span());
      for (std::size_t m = 1; m <= sp.span(); ++m) {
        RootBox box;
        box.segment_index = i;
        box.m = m;
        box.log_r_center = sp.R;
        box.delta = sp.certificate->delta;
        box.phase_center = wrap_phase((sp.phi + kTwoPi * static_cast<double>(m)) / span);
        box.zeta = sp.certificate->zeta;
        out.boxes.push_back(box);
      }
    }
    out.segments.push_back(sp);
  }
  return out;
}

Contour circle_contour(double log_r) { return {{log_r, -kPi}, {log_r, kPi}}; }

Contour box_contour(const RootBox& box) {
  const double l0 = box.log_r_center - box.delta, l1 = box.log_r_center + box.delta;
  const double a0 = box.phase_center - box.zeta, a1 = box.phase_center + box.zeta;
  return {{l0, a0}, {l1, a0}, {l1, a1}, {l0, a1}, {l0, a0}};
}

int winding_count(std::span<const LogComplex> coeffs, const Contour& contour,
                  std::size_t samples_per_edge) {
  if (contour.size() < 2) throw std::invalid_argument("winding_count: contour needs >= 2 points");
  const LogPoint& first = contour.front();
  const LogPoint& last = contour.back();
  if (std::abs(first.log_r - last.log_r) > 1e-12 * (1.0 + std::abs(first.log_r)) ||
      phase_distance(first.arg, last.arg) > 1e-12)
    throw std::invalid_argument("winding_count: contour is not closed");
  samples_per_edge = std::max<std::size_t>(samples_per_edge, 4);
  constexpr std::size_t kMaxSamples = std::size_t{1} << 22;
  constexpr double kGuard = 1e-11;

  double total = 0.0;
  std::vector<double> phases;
  for (std::size_t e = 0; e + 1 < contour.size(); ++e) {
    const LogPoint a = contour[e], b = contour[e + 1];
    for (std::size_t samples = samples_per_edge;; samples *= 2) {
      if (samples > kMaxSamples)
        throw ContourGuardError("winding_count: contour too close to a root (argument unresolved)");
      phases.resize(samples + 1);
      for (std::size_t i = 0; i <= samples; ++i) {
        const ScaledSum s =
            scaled_sum(coeffs, lerp(a, b, static_cast<double>(i) / static_cast<double>(samples)), false);
        if (s.shift == -kInf || std::abs(s.value) < kGuard * s.magnitude)
          throw ContourGuardError("winding_count: contour too close to a root");
        phases[i] = std::arg(s.value);
      }
      double edge = 0.0, worst = 0.0;
      for (std::size_t i = 0; i < samples; ++i) {
        const double step = wrap_phase(phases[i + 1] - phases[i]);
        worst = std::max(worst, std::abs(step));
        edge += step;
      }
      if (worst < kPi / 4.0) {
        total += edge;
        break;
      }
    }
  }
  const double turns = total / kTwoPi;
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 0.25)
    throw ContourGuardError("winding_count: accumulated argument is not a multiple of 2 pi");
  return static_cast<int>(rounded);
}

int count_roots_annulus(std::span<const LogComplex> coeffs, double log_r1, double log_r2) {
  if (!(log_r1 < log_r2)) throw std::invalid_argument("count_roots_annulus: need log_r1 < log_r2");
  return winding_count(coeffs, circle_contour(log_r2)) - winding_count(coeffs, circle_contour(log_r1));
}

std::vector<LogPoint> solve_roots_direct(std::span<const LogComplex> coeffs,
                                         const DirectSolveOptions& options) {
  if (coeffs.size() < 2) throw std::invalid_argument("solve_roots_direct: degree must be >= 1");
  if (coeffs.back().is_zero())
    throw std::invalid_argument("solve_roots_direct: leading coefficient must be nonzero");
  std::size_t zeros = 0;
  while (coeffs[zeros].is_zero()) ++zeros;
  const auto poly = coeffs.subspan(zeros);
  const std::size_t degree = poly.size() - 1;
  if (coeffs.size() - 1 > options.max_degree)
    throw std::domain_error("solve_roots_direct: degree exceeds max_degree");

  double lo = kInf, hi = -kInf;
  for (const auto& c : poly)
    if (!c.is_zero()) lo = std::min(lo, c.log_mod()), hi = std::max(hi, c.log_mod());
  if (hi - lo > 2.0 * options.range)
    throw std::domain_error("solve_roots_direct: coefficient log-moduli outside the representable range");

  std::vector<LogPoint> out(zeros, LogPoint{-kInf, 0.0});
  if (degree == 0) return out;

  // Initial guesses on the circles of the coefficient Newton polygon.
  std::vector<std::size_t> hull;
  for (std::size_t j = 0; j <= degree; ++j) {
    if (poly[j].is_zero()) continue;
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2], b = hull.back();
      const double cross = (double(b) - double(a)) * (poly[j].log_mod() - poly[a].log_mod()) -
                           (poly[b].log_mod() - poly[a].log_mod()) * (double(j) - double(a));
      if (cross >= 0.0) hull.pop_back(); else break;
    }
    hull.push_back(j);
  }
  std::vector<std::complex<double>> z;
  z.reserve(degree);
  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    const std::size_t k = hull[e], l = hull[e + 1];
    const double span = static_cast<double>(l - k);
    const double log_r = (poly[k].log_mod() - poly[l].log_mod()) / span;
    for (std::size_t m = 0; m < l - k; ++m)
      z.push_back(std::polar(std::exp(log_r),
                             kTwoPi * (static_cast<double>(m) + 0.25) / span + 0.4 * double(e + 1)));
  }

  bool converged = false;
  for (std::size_t sweep = 0; sweep < options.max_sweeps && !converged; ++sweep) {
    double worst = 0.0;
    for (std::size_t i = 0; i < degree; ++i) {
      const LogPoint at{std::log(std::abs(z[i])), std::arg(z[i])};
      const ScaledSum s = scaled_sum(poly, at, true);
      if (s.value == std::complex<double>(0.0, 0.0)) continue;
      std::complex<double> newton = s.weighted == std::complex<double>(0.0, 0.0)
                                        ? z[i] * 1e-3
                                        : z[i] * s.value / s.weighted;
      std::complex<double> repulsion = 0.0;
      for (std::size_t k = 0; k < degree; ++k)
        if (k != i) repulsion += 1.0 / (z[i] - z[k]);
      const std::complex<double> step = newton / (1.0 - newton * repulsion);
      z[i] -= step;
      worst = std::max(worst, std::abs(step) / std::abs(z[i]));
    }
    converged = worst < 1e-12;
  }
  if (!converged) throw std::runtime_error("solve_roots_direct: Aberth iteration did not converge");
  for (const auto& r : z) out.push_back({std::log(std::abs(r)), std::arg(r)});
  return out;
}

std::vector<RealRootPrediction> predict_real_roots(std::span<const LogComplex> coeffs) {
  if (!all_real(coeffs)) throw std::domain_error("predict_real_roots: coefficients must be real");
  const RootPrediction pred = predict_root_boxes(coeffs);
  std::vector<RealRootPrediction> out;
  for (std::size_t i = 0; i < pred.segments.size(); ++i) {
    const auto& s = pred.segments[i];
    if (*s.eps_plus) out.push_back({+1, s.R, i, s.certified});
    if (*s.eps_minus) out.push_back({-1, s.R, i, s.certified});
  }
  return out;
}

SurrogateRoots surrogate_roots_alpha0(std::span<const LogComplex> coeffs) {
  if (coeffs.size() < 2) throw std::invalid_argument("surrogate_roots_alpha0: degree must be >= 1");
  const std::size_t n = coeffs.size() - 1;
  if (coeffs.front().is_zero() || coeffs.back().is_zero())
    throw std::invalid_argument("surrogate_roots_alpha0: a_0 and a_n must be nonzero");
  std::size_t tau = 0;
  bool unique = true;
  for (std::size_t k = 1; k <= n; ++k) {
    if (coeffs[k].log_mod() > coeffs[tau].log_mod()) tau = k, unique = true;
    else if (coeffs[k].log_mod() == coeffs[tau].log_mod()) unique = false;
  }
  if (!unique) throw std::domain_error("surrogate_roots_alpha0: maximal modulus is not unique");

  SurrogateRoots out;
  out.tau = tau;
  auto block = [](const LogComplex& low, const LogComplex& high, std::size_t span) {
    // roots of high z^span + low = 0
    std::vector<LogPoint> roots;
    const double s = static_cast<double>(span);
    const double log_r = (low.log_mod() - high.log_mod()) / s;
    const double phi = wrap_phase(kPi + low.phase() - high.phase());
    for (std::size_t m = 1; m <= span; ++m)
      roots.push_back({log_r, wrap_phase((phi + kTwoPi * static_cast<double>(m)) / s)});
    return roots;
  };
  if (tau > 0) out.first_block = block(coeffs[0], coeffs[tau], tau);
  if (tau < n) out.second_block = block(coeffs[tau], coeffs[n], n - tau);
  return out;
}

int two_term_real_roots(int sign_a, int sign_b, std::size_t exponent) {
  if (exponent == 0) return 0;
  if (exponent % 2 == 1) return 1;
  return -sign_a * sign_b > 0 ? 2 : 0;
}

int factorized_real_root_count(int sign_0, int sign_tau, int sign_n, std::size_t tau,
                               std::size_t n) {
  if (tau > n) throw std::invalid_argument("factorized_real_root_count: tau > n");
  return two_term_real_roots(sign_tau, sign_0, tau) + two_term_real_roots(sign_n, sign_tau, n - tau);
}

}  // namespace logroots
