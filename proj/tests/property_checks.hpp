#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "logroots/coeff_models.hpp"
#include "logroots/experiments.hpp"
#include "logroots/majorant.hpp"
#include "logroots/roots.hpp"
#include "logroots/serialization.hpp"

// Randomized checks shared by the property suite and the acceptance binary.
namespace props {

using namespace logroots;

struct Outcome {
  bool ok = true;
  std::size_t cases = 0;
  std::string detail;

  void fail(const std::string& what) {
    if (ok) detail = what;
    ok = false;
  }
};

// Upper hull of integer points by the edge characterization: (i, j) is an
// edge iff no point lies strictly above the line through them and every point
// on that line has x in [x_i, x_j].
inline std::vector<PlanarPoint> brute_force_hull(const std::vector<std::pair<long, long>>& raw) {
  std::map<long, long> best;  // x -> largest y
  for (auto [x, y] : raw) {
    auto it = best.find(x);
    if (it == best.end() || it->second < y) best[x] = y;
  }
  std::vector<std::pair<long, long>> p(best.begin(), best.end());
  if (p.size() == 1) return {{double(p[0].first), double(p[0].second)}};
  std::vector<bool> vertex(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      const long dx = p[j].first - p[i].first, dy = p[j].second - p[i].second;
      bool edge = true;
      for (std::size_t k = 0; k < p.size() && edge; ++k) {
        // sign of (p_k - p_i) x (p_j - p_i); positive means p_k lies below the line
        const long cross = (p[k].first - p[i].first) * dy - (p[k].second - p[i].second) * dx;
        if (cross < 0) edge = false;
        if (cross == 0 && (k < i || k > j)) edge = false;
      }
      if (edge) vertex[i] = vertex[j] = true;
    }
  std::vector<PlanarPoint> out;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (vertex[i]) out.push_back({double(p[i].first), double(p[i].second)});
  return out;
}

inline Outcome hull_matches_bruteforce(std::size_t instances, std::uint64_t seed) {
  Outcome o;
  for (std::size_t t = 0; t < instances; ++t, ++o.cases) {
    Rng rng = Rng::substream(seed, t);
    std::vector<std::pair<long, long>> raw;
    std::vector<PlanarPoint> pts;
    for (int k = 0; k < 10; ++k) {
      const long x = long(rng.next_u64() % 21), y = long(rng.next_u64() % 21);
      raw.emplace_back(x, y);
      pts.push_back({double(x), double(y)});
    }
    const Majorant m = upper_hull(pts);
    if (m.vertices != brute_force_hull(raw)) {
      o.fail("hull vertices differ from the brute-force oracle on instance " + std::to_string(t));
      continue;
    }
    for (std::size_t i = 1; i < m.segments.size(); ++i)
      if (!(m.segments[i].R > m.segments[i - 1].R)) o.fail("slopes not strictly decreasing");
    for (const auto& q : pts)
      if (q.y > evaluate(m, q.x) + 1e-12) o.fail("a point lies above the majorant");
    if (upper_hull(m.vertices).vertices != m.vertices) o.fail("hull of the vertices differs");
    // gap is zero exactly when some non-vertex point touches the segment line
    for (std::size_t i = 0; i < m.segments.size(); ++i) {
      const auto& s = m.segments[i];
      bool touches = false;
      for (const auto& q : pts)
        if (q.x != s.x_lo && q.x != s.x_hi && s.S - s.R * q.x - q.y == 0.0) touches = true;
      const double h = segment_gap(m, pts, i, GapMode::Raw);
      if ((h > 0.0) == touches) o.fail("segment_gap positivity disagrees with contact");
    }
  }
  return o;
}

inline std::complex<double> horner(const std::vector<LogComplex>& c, std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (std::size_t j = c.size(); j-- > 0;) acc = acc * z + c[j].to_complex();
  return acc;
}

// All term log-moduli in [-30, 30]; relative agreement 1e-9.
inline Outcome eval_matches_horner(std::size_t instances, std::uint64_t seed) {
  Outcome o;
  for (std::size_t t = 0; t < instances; ++t, ++o.cases) {
    Rng rng = Rng::substream(seed, t);
    const std::size_t degree = 1 + rng.next_u64() % 30;
    const LogPoint z{rng.uniform(-1.0, 1.0), rng.uniform(-3.14, 3.14)};
    std::vector<LogComplex> c;
    for (std::size_t j = 0; j <= degree; ++j) {
      const double term = rng.uniform(-30.0, 30.0);
      c.emplace_back(term - double(j) * z.log_r, rng.uniform(-3.14, 3.14));
    }
    const auto got = eval_log_scaled(c, z).to_complex();
    const auto want = horner(c, std::polar(std::exp(z.log_r), z.arg));
    if (std::abs(got - want) > 1e-9 * std::abs(want)) {
      std::ostringstream msg;
      msg << "instance " << t << ": |diff| / |p| = " << std::abs(got - want) / std::abs(want);
      o.fail(msg.str());
    }
  }
  return o;
}

inline bool closed_under_conjugation(const std::vector<LogPoint>& roots, double tol) {
  for (const auto& r : roots) {
    const bool found = std::any_of(roots.begin(), roots.end(), [&](const LogPoint& q) {
      return std::abs(q.log_r - r.log_r) <= tol && phase_distance(q.arg, -r.arg) <= tol;
    });
    if (!found) return false;
  }
  return true;
}

inline Outcome conjugate_symmetry(std::size_t instances, std::uint64_t seed) {
  Outcome o;
  for (std::size_t t = 0; t < instances; ++t, ++o.cases) {
    Rng rng = Rng::substream(seed, t);
    const std::size_t degree = 2 + rng.next_u64() % 39;
    const auto c = sample_polynomial(TailSpec::pareto_log(1.0), degree, rng);
    const auto pred = predict_root_boxes(c);
    std::vector<LogPoint> centres;
    for (const auto& b : pred.boxes) centres.push_back({b.log_r_center, b.phase_center});
    if (!closed_under_conjugation(centres, 1e-12))
      o.fail("box centres not closed under conjugation on instance " + std::to_string(t));
    try {
      if (!closed_under_conjugation(solve_roots_direct(c), 1e-7))
        o.fail("direct roots not closed under conjugation on instance " + std::to_string(t));
    } catch (const std::exception&) {
      // coefficient range beyond the direct solver; boxes were still checked
    }
  }
  return o;
}

// Multiplying every coefficient by one constant moves nothing.
inline Outcome scaling_homogeneity(std::size_t instances, std::uint64_t seed) {
  Outcome o;
  const double tol = 1e-9;
  for (std::size_t t = 0; t < instances; ++t, ++o.cases) {
    Rng rng = Rng::substream(seed, t);
    const std::size_t degree = 2 + rng.next_u64() % 199;
    auto spec = TailSpec::pareto_log(rng.uniform(0.3, 2.0));
    const bool real = t % 2 == 0;
    spec.complex_coeffs = !real;
    const auto c = sample_polynomial(spec, degree, rng);
    const LogComplex k(rng.uniform(-50.0, 50.0), real ? (rng.bernoulli(0.5) ? 0.0 : std::numbers::pi)
                                                      : rng.uniform(-3.0, 3.0));
    std::vector<LogComplex> scaled;
    for (const auto& a : c) scaled.push_back(a * k);
    const auto p = predict_root_boxes(c), q = predict_root_boxes(scaled);
    // log-moduli reach 1e9 and more; compare at their rounding scale
    double scale = 1.0 + std::abs(k.log_mod());
    for (const auto& a : c) scale = std::max(scale, 1.0 + std::abs(a.log_mod()));
    const std::string where = " on instance " + std::to_string(t);
    if (p.segments.size() != q.segments.size() || p.boxes.size() != q.boxes.size()) {
      o.fail("segment or box count changed" + where);
      continue;
    }
    for (std::size_t i = 0; i < p.segments.size(); ++i) {
      const auto &a = p.segments[i], &b = q.segments[i];
      if (a.k != b.k || a.l != b.l || a.certified != b.certified || std::abs(a.R - b.R) > tol * scale ||
          phase_distance(a.phi, b.phi) > tol || std::abs(a.h - b.h) > tol * scale)
        o.fail("segment data changed" + where);
      if (a.eps_plus != b.eps_plus || a.eps_minus != b.eps_minus) o.fail("real-root flags changed" + where);
    }
    for (std::size_t i = 0; i < p.boxes.size(); ++i) {
      const auto &a = p.boxes[i], &b = q.boxes[i];
      if (a.m != b.m || std::abs(a.log_r_center - b.log_r_center) > tol * scale ||
          phase_distance(a.phase_center, b.phase_center) > tol ||
          std::abs(a.delta - b.delta) > tol * (1.0 + a.delta) || std::abs(a.zeta - b.zeta) > tol * a.zeta)
        o.fail("box moved" + where);
    }
  }
  return o;
}

struct ThreadsOverride {
  explicit ThreadsOverride(const char* value) {
    if (const char* old = std::getenv("LOGROOTS_THREADS")) saved = old;
    setenv("LOGROOTS_THREADS", value, 1);
  }
  ~ThreadsOverride() {
    if (saved.empty()) unsetenv("LOGROOTS_THREADS");
    else setenv("LOGROOTS_THREADS", saved.c_str(), 1);
  }
  std::string saved;
};

// Same config and seed give the same bytes, whatever the worker count.
inline Outcome report_determinism() {
  Outcome o;
  auto runs = [](const char* threads) {
    ThreadsOverride env(threads);
    return std::vector<std::string>{
        deterministic_dump(run_segment_count(0.6, 3000, 21)),
        deterministic_dump(run_root_localization(TailSpec::pareto_log(0.5), 120, 8, 22)),
        deterministic_dump(run_real_roots(TailSpec::slow_log(), 300, 500, 23, Parity::Even)),
        deterministic_dump(run_process_convergence(TailSpec::pareto_log(1.0), 500, standard_rectangles(), 50, 24)),
    };
  };
  const auto first = runs("1"), again = runs("1"), parallel = runs("3");
  for (std::size_t i = 0; i < first.size(); ++i, ++o.cases) {
    if (first[i] != again[i]) o.fail("report " + std::to_string(i) + " differs between identical runs");
    if (first[i] != parallel[i]) o.fail("report " + std::to_string(i) + " depends on the worker count");
  }
  return o;
}

}  // namespace props
