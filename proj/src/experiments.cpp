#include "logroots/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "logroots/limit_formulas.hpp"
#include "logroots/majorant.hpp"
#include "logroots/roots.hpp"
#include "logroots/stats.hpp"

namespace logroots {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double fraction(std::size_t part, std::size_t whole) {
  return whole == 0 ? 0.0 : static_cast<double>(part) / static_cast<double>(whole);
}

// One-sample KS distance of angles against the uniform law on the circle.
double ks_uniform_circle(std::vector<double> phases) {
  for (auto& p : phases) p = (p + std::numbers::pi) / (2.0 * std::numbers::pi);
  std::sort(phases.begin(), phases.end());
  const double m = static_cast<double>(phases.size());
  double d = 0.0;
  for (std::size_t i = 0; i < phases.size(); ++i) {
    d = std::max(d, static_cast<double>(i + 1) / m - phases[i]);
    d = std::max(d, phases[i] - static_cast<double>(i) / m);
  }
  return d;
}

void require_trials(std::size_t trials) {
  if (trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::SegmentCount: return "segment_count";
    case ExperimentKind::RootLocalization: return "root_localization";
    case ExperimentKind::RealRoots: return "real_roots";
    case ExperimentKind::ProcessConvergence: return "process_convergence";
  }
  return "unknown";
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
  if (name == "segment_count") return ExperimentKind::SegmentCount;
  if (name == "root_localization") return ExperimentKind::RootLocalization;
  if (name == "real_roots") return ExperimentKind::RealRoots;
  if (name == "process_convergence") return ExperimentKind::ProcessConvergence;
  throw std::invalid_argument("unknown experiment kind: " + name);
}

std::string to_string(Parity parity) { return parity == Parity::Even ? "even" : "odd"; }

Parity parity_from_string(const std::string& name) {
  if (name == "even") return Parity::Even;
  if (name == "odd") return Parity::Odd;
  throw std::invalid_argument("parity must be 'even' or 'odd': " + name);
}

std::vector<Rectangle> standard_rectangles() {
  return {{0.0, 1.0, 1.0}, {0.0, 0.5, 2.0}, {0.25, 0.75, 0.5}, {0.5, 1.0, 1.0}, {0.0, 1.0, 3.0}};
}

void ExperimentConfig::validate() const {
  spec.validate();
  require_trials(trials);
  switch (kind) {
    case ExperimentKind::SegmentCount:
      if (!(spec.alpha > 0.0 && spec.alpha < 1.0))
        throw std::invalid_argument("segment_count: alpha must lie in (0,1)");
      if (!(miss_tol > 0.0 && miss_tol <= 0.01))
        throw std::invalid_argument("segment_count: miss_tol must lie in (0, 0.01]");
      break;
    case ExperimentKind::RootLocalization:
      if (n < 1) throw std::invalid_argument("root_localization: n must be >= 1");
      if (!(kappa > 0.0 && kappa < 0.5))
        throw std::invalid_argument("root_localization: kappa must lie in (0, 1/2)");
      break;
    case ExperimentKind::RealRoots:
      if (n < 1) throw std::invalid_argument("real_roots: n must be >= 1");
      if (spec.complex_coeffs) throw std::invalid_argument("real_roots: coefficients must be real");
      if ((n % 2 == 0) != (parity == Parity::Even))
        throw std::invalid_argument("real_roots: parity does not match n");
      break;
    case ExperimentKind::ProcessConvergence:
      if (n < 1) throw std::invalid_argument("process_convergence: n must be >= 1");
      if (!spec.has_tail_index())
        throw std::invalid_argument("process_convergence: spec needs a tail index");
      for (const auto& r : rectangles)
        if (!(r.u1 >= 0.0 && r.u1 < r.u2 && r.u2 <= 1.0 && r.t > 0.0))
          throw std::invalid_argument("process_convergence: invalid rectangle");
      break;
  }
}

bool ExperimentReport::all_pass() const {
  return std::all_of(statistics.begin(), statistics.end(), [](const auto& s) { return s.pass; });
}

const StatisticRecord& ExperimentReport::find(const std::string& name) const {
  for (const auto& s : statistics)
    if (s.name == name) return s;
  throw std::out_of_range("report has no statistic " + name);
}

StatisticRecord compare(std::string name, double estimate, double std_error, double theory,
                        double band) {
  StatisticRecord r;
  r.name = std::move(name);
  r.estimate = estimate;
  r.std_error = std_error;
  r.theory = theory;
  r.z = z_score(estimate, theory, std_error);
  r.band = band;
  r.pass = std::abs(*r.z) <= band;
  return r;
}

StatisticRecord observe(std::string name, double estimate, double std_error) {
  StatisticRecord r;
  r.name = std::move(name);
  r.estimate = estimate;
  r.std_error = std_error;
  return r;
}

std::size_t worker_count(std::size_t tasks) {
  std::size_t w = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("LOGROOTS_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) w = static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::min(w, tasks));
}

ExperimentReport run_segment_count(double alpha, std::size_t trials, std::uint64_t seed,
                                   double miss_tol) {
  const auto start = Clock::now();
  ExperimentReport report;
  report.config.kind = ExperimentKind::SegmentCount;
  report.config.spec = TailSpec::pareto_log(alpha);
  report.config.trials = trials;
  report.config.master_seed = seed;
  report.config.miss_tol = miss_tol;
  report.config.validate();

  struct Trial {
    std::size_t segments;
    double certificate;
  };
  const auto results = parallel_trials(trials, [&](std::size_t i) {
    Rng rng = Rng::substream(seed, i);
    const MajorantSample s = sample_majorant(alpha, rng, miss_tol);
    return Trial{s.segment_count, s.miss_certificate};
  });

  RunningStats segments;
  std::size_t two = 0;
  double worst_certificate = 0.0;
  report.raw_columns = {"trial", "segments", "miss_certificate"};
  for (std::size_t i = 0; i < trials; ++i) {
    segments.add(static_cast<double>(results[i].segments));
    two += results[i].segments == 2;
    worst_certificate = std::max(worst_certificate, results[i].certificate);
    report.raw_rows.push_back({double(i), double(results[i].segments), results[i].certificate});
  }
  const auto s = segments.summary();
  report.statistics.push_back(
      compare("mean_segments", s.mean, s.std_error(), expected_segments_closed(alpha)));
  const double p2 = prob_two_segments(alpha);
  report.statistics.push_back(
      compare("prob_two_segments", fraction(two, trials), binomial_std_error(p2, trials), p2));
  auto cert = observe("max_miss_certificate", worst_certificate);
  cert.pass = worst_certificate <= miss_tol;
  report.statistics.push_back(cert);
  report.runtime_seconds = seconds_since(start);
  return report;
}

ExperimentReport run_root_localization(const TailSpec& spec, std::size_t n, std::size_t trials,
                                       std::uint64_t seed, double kappa) {
  const auto start = Clock::now();
  ExperimentReport report;
  report.config.kind = ExperimentKind::RootLocalization;
  report.config.spec = spec;
  report.config.n = n;
  report.config.trials = trials;
  report.config.master_seed = seed;
  report.config.kappa = kappa;
  report.config.validate();
  const double b_n = spec.has_tail_index() ? normalizing_sequences(spec, n).b_n : 1.0;
  constexpr std::size_t kSubsample = 50;

  struct Trial {
    std::size_t segments = 0, certified_segments = 0, boxes = 0;
    bool fully_certified = false;
    std::size_t verified = 0, successes = 0, guard_failures = 0;
    double wasserstein = 0.0, scale = 0.0;  // scale: largest |b_n R|
    std::size_t ks_segments = 0, ks_pass = 0;
  };
  const auto results = parallel_trials(trials, [&](std::size_t i) {
    Rng rng = Rng::substream(seed, i);
    const auto coeffs = sample_polynomial(spec, n, rng);
    const RootPrediction pred = predict_root_boxes(coeffs);
    Trial t;
    t.segments = pred.segments.size();
    for (const auto& s : pred.segments) t.certified_segments += s.certified;
    t.fully_certified = pred.all_certified();
    t.boxes = pred.boxes.size();

    // All boxes on the real axis of sign-change segments, plus a random subsample.
    std::vector<std::size_t> chosen, rest;
    for (std::size_t b = 0; b < pred.boxes.size(); ++b) {
      const auto& box = pred.boxes[b];
      const auto& seg = pred.segments[box.segment_index];
      const bool on_axis = phase_distance(box.phase_center, 0.0) < 1e-9 ||
                           phase_distance(box.phase_center, std::numbers::pi) < 1e-9;
      const bool flagged = seg.eps_plus && (*seg.eps_plus || *seg.eps_minus);
      (on_axis && flagged ? chosen : rest).push_back(b);
    }
    for (std::size_t k = 0; k < std::min(kSubsample, rest.size()); ++k) {
      const std::size_t j = k + static_cast<std::size_t>(rng.next_u64() % (rest.size() - k));
      std::swap(rest[k], rest[j]);
      chosen.push_back(rest[k]);
    }
    for (std::size_t b : chosen) {
      try {
        const int w = winding_count(coeffs, box_contour(pred.boxes[b]));
        ++t.verified;
        t.successes += w == 1;
      } catch (const ContourGuardError&) {
        ++t.guard_failures;
      }
    }

    if (t.fully_certified) {
      std::vector<WeightedPoint> boxes, segments;
      for (const auto& box : pred.boxes)
        boxes.push_back({b_n * box.log_r_center, 1.0 / static_cast<double>(n)});
      for (const auto& s : pred.segments) {
        segments.push_back({b_n * s.R, static_cast<double>(s.span()) / static_cast<double>(n)});
        t.scale = std::max(t.scale, std::abs(b_n * s.R));
      }
      t.wasserstein = distance_stats(boxes, segments).wasserstein1;
    }
    for (std::size_t si = 0; si < pred.segments.size(); ++si) {
      std::vector<double> phases;
      for (const auto& box : pred.boxes)
        if (box.segment_index == si) phases.push_back(box.phase_center);
      if (phases.size() < 2) continue;
      ++t.ks_segments;
      t.ks_pass += ks_uniform_circle(phases) < ks_critical_value(phases.size(), 0.01);
    }
    return t;
  });

  RunningStats certified_fraction;
  std::size_t full = 0, full_with_n = 0, verified = 0, successes = 0, guards = 0;
  std::size_t ks_segments = 0, ks_pass = 0;
  double worst_w1 = 0.0, worst_scale = 0.0;
  report.raw_columns = {"trial", "segments", "certified_segments", "boxes", "verified", "successes"};
  for (std::size_t i = 0; i < trials; ++i) {
    const Trial& t = results[i];
    certified_fraction.add(fraction(t.certified_segments, t.segments));
    full += t.fully_certified;
    full_with_n += t.fully_certified && t.boxes == n;
    verified += t.verified;
    successes += t.successes;
    guards += t.guard_failures;
    ks_segments += t.ks_segments;
    ks_pass += t.ks_pass;
    worst_w1 = std::max(worst_w1, t.wasserstein);
    worst_scale = std::max(worst_scale, t.scale);
    report.raw_rows.push_back({double(i), double(t.segments), double(t.certified_segments),
                               double(t.boxes), double(t.verified), double(t.successes)});
  }
  const auto cf = certified_fraction.summary();
  report.statistics.push_back(observe("certified_segment_fraction", cf.mean, cf.std_error()));
  report.statistics.push_back(observe("fully_certified_fraction", fraction(full, trials)));
  report.statistics.push_back(observe("verified_boxes", static_cast<double>(verified)));
  if (verified > 0)
    report.statistics.push_back(compare("box_verification_rate", fraction(successes, verified), 0.0, 1.0));
  auto guard = observe("contour_guard_failures", static_cast<double>(guards));
  guard.pass = guards == 0;
  report.statistics.push_back(guard);
  if (full > 0) {
    report.statistics.push_back(compare("certified_box_count_equals_n", fraction(full_with_n, full), 0.0, 1.0));
    // identical measures up to rounding in the cumulative weights
    auto w1 = observe("max_wasserstein1_boxes_vs_segments", worst_w1);
    w1.pass = worst_w1 <= 1e-9 * (1.0 + worst_scale);
    report.statistics.push_back(w1);
  }
  if (ks_segments > 0) {
    auto ks = observe("phase_ks_pass_fraction", fraction(ks_pass, ks_segments));
    ks.pass = ks.estimate >= 0.95;
    report.statistics.push_back(ks);
  }
  report.uncertified_fraction = 1.0 - fraction(full, trials);
  report.runtime_seconds = seconds_since(start);
  return report;
}

bool alpha0_good_event(const std::vector<double>& levels, double kappa, double A) {
  if (levels.size() < 3) throw std::invalid_argument("alpha0_good_event: need n >= 2");
  const std::size_t n = levels.size() - 1;
  const double nd = static_cast<double>(n);
  const std::size_t tau =
      static_cast<std::size_t>(std::min_element(levels.begin(), levels.end()) - levels.begin());
  const double td = static_cast<double>(tau);
  if (!(kappa * nd < td && td < (1.0 - kappa) * nd)) return false;
  const double log_n = std::log(nd);
  // log log|xi_k| = 1 / U_k
  const double log_m = 1.0 / levels[tau];
  if (!(1.0 / levels[0] < A * log_n && 1.0 / levels[n] < A * log_n)) return false;
  if (!(log_m > (2.0 * A + 1.0) * log_n)) return false;
  // e^x - e^y > n^{2A}, in log form
  auto dominates = [&](double x, double y) {
    return y < x && x + std::log1p(-std::exp(y - x)) > 2.0 * A * log_n;
  };
  const double x1 = log_m - std::log(td), x2 = log_m - std::log(nd - td);
  double y1 = -std::numeric_limits<double>::infinity(), y2 = y1;
  for (std::size_t k = 0; k <= n; ++k) {
    if (k == tau) continue;
    const double lk = 1.0 / levels[k];
    if (k != 0) y1 = std::max(y1, lk - std::log(static_cast<double>(k)));
    if (k != n) y2 = std::max(y2, lk - std::log(nd - static_cast<double>(k)));
  }
  return dominates(x1, y1) && dominates(x2, y2);
}

ExperimentReport run_real_roots(const TailSpec& spec, std::size_t n, std::size_t trials,
                                std::uint64_t seed, Parity parity, double kappa) {
  const auto start = Clock::now();
  ExperimentReport report;
  report.config.kind = ExperimentKind::RealRoots;
  report.config.spec = spec;
  report.config.n = n;
  report.config.trials = trials;
  report.config.master_seed = seed;
  report.config.parity = parity;
  report.config.kappa = kappa;
  report.config.validate();

  if (spec.family == TailFamily::SlowLog) {
    if (n < 2) throw std::invalid_argument("real_roots: n must be >= 2");
    struct Trial {
      int count;
      bool good;
    };
    const auto results = parallel_trials(trials, [&](std::size_t i) {
      Rng rng = Rng::substream(seed, i);
      // log|xi_k| = exp(1/U_k) overflows doubles; work with the levels.
      std::vector<double> levels(n + 1);
      std::vector<int> signs(n + 1);
      for (std::size_t k = 0; k <= n; ++k) {
        levels[k] = rng.uniform_open();
        signs[k] = draw_phase(spec, levels[k], rng) == 0.0 ? 1 : -1;
      }
      const std::size_t tau =
          static_cast<std::size_t>(std::min_element(levels.begin(), levels.end()) - levels.begin());
      return Trial{factorized_real_root_count(signs[0], signs[tau], signs[n], tau, n),
                   alpha0_good_event(levels, kappa)};
    });
    const Alpha0Distribution law = alpha0_real_distribution(spec.c, spec.p, parity);
    std::vector<std::size_t> hist(5, 0);
    std::size_t good = 0;
    report.raw_columns = {"trial", "real_roots", "good_event"};
    for (std::size_t i = 0; i < trials; ++i) {
      ++hist[static_cast<std::size_t>(results[i].count)];
      good += results[i].good;
      report.raw_rows.push_back({double(i), double(results[i].count), double(results[i].good)});
    }
    std::size_t outside = trials;
    for (std::size_t j = 0; j < law.support.size(); ++j) {
      const std::size_t m = static_cast<std::size_t>(law.support[j]);
      outside -= hist[m];
      const double p0 = law.probs[j];
      report.statistics.push_back(compare("freq_" + std::to_string(m), fraction(hist[m], trials),
                                          binomial_std_error(p0, trials), p0));
    }
    report.statistics.push_back(compare("freq_outside_support", fraction(outside, trials), 0.0, 0.0));
    report.statistics.push_back(observe("good_event_fraction", fraction(good, trials)));
    report.uncertified_fraction = 1.0 - fraction(good, trials);
  } else {
    // Predicted real roots at degree n and n+1 (one of each parity).
    const bool has_theory = spec.has_tail_index() && spec.alpha > 0.0 && spec.alpha < 1.0;
    std::size_t uncertified = 0;
    report.raw_columns = {"trial", "degree", "real_roots", "certified"};
    for (std::size_t degree : {n, n + 1}) {
      struct Trial {
        std::size_t count;
        bool certified;
      };
      const auto results = parallel_trials(trials, [&](std::size_t i) {
        Rng rng = Rng::substream(seed ^ degree, i);
        const auto coeffs = sample_polynomial(spec, degree, rng);
        const auto real = predict_real_roots(coeffs);
        bool certified = true;
        for (const auto& r : real) certified = certified && r.certified;
        return Trial{real.size(), certified};
      });
      RunningStats counts;
      for (std::size_t i = 0; i < trials; ++i) {
        counts.add(static_cast<double>(results[i].count));
        uncertified += !results[i].certified;
        report.raw_rows.push_back({double(i), double(degree), double(results[i].count),
                                   double(results[i].certified)});
      }
      const auto s = counts.summary();
      const std::string name = std::string("mean_real_roots_") + (degree % 2 == 0 ? "even" : "odd");
      if (has_theory)
        report.statistics.push_back(
            compare(name, s.mean, s.std_error(), expected_real_roots(spec.alpha, spec.c, spec.p), 5.0));
      else
        report.statistics.push_back(observe(name, s.mean, s.std_error()));
    }
    report.uncertified_fraction = fraction(uncertified, 2 * trials);
  }
  report.runtime_seconds = seconds_since(start);
  return report;
}

ExperimentReport run_process_convergence(const TailSpec& spec, std::size_t n,
                                         const std::vector<Rectangle>& rectangles,
                                         std::size_t trials, std::uint64_t seed) {
  const auto start = Clock::now();
  ExperimentReport report;
  report.config.kind = ExperimentKind::ProcessConvergence;
  report.config.spec = spec;
  report.config.n = n;
  report.config.trials = trials;
  report.config.master_seed = seed;
  report.config.rectangles = rectangles;
  report.config.validate();
  const double a_n = normalizing_sequences(spec, n).a_n;
  const double alpha = spec.tail_index();

  const auto results = parallel_trials(trials, [&](std::size_t i) {
    Rng rng = Rng::substream(seed, i);
    std::vector<double> counts(rectangles.size(), 0.0);
    const double nd = static_cast<double>(n);
    for (std::size_t k = 0; k <= n; ++k) {
      const double y = log_modulus_at_level(spec, rng.uniform_open());
      if (y <= 0.0) continue;
      const double u = static_cast<double>(k) / nd, v = y / a_n;
      for (std::size_t r = 0; r < rectangles.size(); ++r)
        if (rectangles[r].u1 <= u && u <= rectangles[r].u2 && v > rectangles[r].t) counts[r] += 1.0;
    }
    return counts;
  });

  report.raw_columns = {"trial"};
  for (std::size_t r = 0; r < rectangles.size(); ++r) report.raw_columns.push_back("count_" + std::to_string(r));
  for (std::size_t i = 0; i < trials; ++i) {
    std::vector<double> row{double(i)};
    row.insert(row.end(), results[i].begin(), results[i].end());
    report.raw_rows.push_back(std::move(row));
  }
  for (std::size_t r = 0; r < rectangles.size(); ++r) {
    RunningStats stats;
    for (const auto& counts : results) stats.add(counts[r]);
    const auto s = stats.summary();
    const auto& rect = rectangles[r];
    const double theory = (rect.u2 - rect.u1) * std::pow(rect.t, -alpha);
    report.statistics.push_back(compare("mean_count_" + std::to_string(r), s.mean, s.std_error(), theory));
    auto dispersion = observe("dispersion_" + std::to_string(r), s.mean > 0.0 ? s.variance / s.mean : 0.0);
    dispersion.pass = dispersion.estimate >= 0.8 && dispersion.estimate <= 1.2;
    report.statistics.push_back(dispersion);
  }
  report.runtime_seconds = seconds_since(start);
  return report;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentReport report;
  switch (config.kind) {
    case ExperimentKind::SegmentCount:
      report = run_segment_count(config.spec.alpha, config.trials, config.master_seed, config.miss_tol);
      break;
    case ExperimentKind::RootLocalization:
      report = run_root_localization(config.spec, config.n, config.trials, config.master_seed, config.kappa);
      break;
    case ExperimentKind::RealRoots:
      report = run_real_roots(config.spec, config.n, config.trials, config.master_seed, config.parity,
                              config.kappa);
      break;
    case ExperimentKind::ProcessConvergence:
      report = run_process_convergence(
          config.spec, config.n, config.rectangles.empty() ? standard_rectangles() : config.rectangles,
          config.trials, config.master_seed);
      break;
  }
  const double runtime = report.runtime_seconds;
  auto raw_columns = std::move(report.raw_columns);
  auto raw_rows = std::move(report.raw_rows);
  report.config = config;
  report.raw_columns = std::move(raw_columns);
  report.raw_rows = std::move(raw_rows);
  report.runtime_seconds = runtime;
  return report;
}

}  // namespace logroots
