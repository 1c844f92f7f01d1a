// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "logroots/experiments.hpp"
#include "logroots/limit_formulas.hpp"
#include "logroots/roots.hpp"
#include "property_checks.hpp"

using namespace logroots;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kPi = std::numbers::pi;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

const double kTableAlphas[] = {0.25, 1.0 / 3, 0.5, 2.0 / 3, 0.75};
const double kTableValues[] = {2.29399, 2.41840, 2.73370, 3.20920, 3.57080};

Verdict table_by_simulation() {
  Verdict v;
  const auto t0 = Clock::now();
  for (int i = 0; i < 5; ++i) {
    const auto r = run_segment_count(kTableAlphas[i], 100000, 1000 + i, 1e-6);
    const auto& s = r.find("mean_segments");
    const double z = (s.estimate - kTableValues[i]) / s.std_error;
    v.detail += fmt("a=%.4f mean=%.5f z=%+.2f ", kTableAlphas[i], s.estimate, z);
    if (std::abs(z) > 3) v.require(false, "outside 3 sigma");
    v.require(r.find("max_miss_certificate").estimate <= 1e-6, "miss certificate above tolerance");
  }
  const double t = seconds_since(t0);
  v.detail += fmt("(%.1f s)", t);
  v.require(t < 120, "runtime above 2 min");
  return v;
}

Verdict cross_route() {
  Verdict v;
  const auto t0 = Clock::now();
  double worst = 0;
  for (int i = 1; i <= 19; ++i) {
    const double a = 0.05 * i;
    worst = std::max(worst, std::abs(expected_segments_closed(a) - expected_segments_integral(a)));
  }
  const double s3 = std::sqrt(3.0);
  const double exact[] = {(1.5 - 4 / (3 * s3)) * kPi, 4 * kPi / (3 * s3), 1.5 + kPi * kPi / 8,
                          2 + 2 * kPi / (3 * s3), 2 + kPi / 2};
  double worst_table = 0;
  for (int i = 0; i < 5; ++i) {
    worst_table = std::max(worst_table, std::abs(expected_segments_closed(kTableAlphas[i]) - exact[i]));
    worst_table = std::max(worst_table, std::abs(expected_segments_integral(kTableAlphas[i]) - exact[i]));
  }
  const double t = seconds_since(t0);
  v.detail = fmt("grid max diff %.2e, table max err %.2e (%.2f s)", worst, worst_table, t);
  v.require(worst < 1e-6, "grid disagreement");
  v.require(worst_table < 1e-8, "table mismatch");
  v.require(t < 30, "runtime");
  return v;
}

Verdict two_segments() {
  Verdict v;
  for (double a : {0.25, 0.5, 0.75}) {
    const auto r = run_segment_count(a, 100000, 2000 + int(a * 100), 1e-6);
    const auto& s = r.find("prob_two_segments");
    v.detail += fmt("a=%.2f P=%.4f z=%+.2f ", a, s.estimate, *s.z);
    v.require(std::abs(*s.z) <= 3 && std::abs(*s.theory - (1 - a)) < 1e-15, "outside 3 sigma");
  }
  return v;
}

Verdict degree_five() {
  Verdict v;
  const auto t0 = Clock::now();
  std::vector<LogComplex> c;
  for (double l : {0.0, -20.0, -20.0, -20.0, -20.0, 10.0}) c.push_back(LogComplex::from_signed(1, l));
  const auto pred = predict_root_boxes(c);
  v.require(pred.segments.size() == 1 && std::abs(pred.segments[0].h - 22) < 1e-12, "h != 22");
  v.require(pred.all_certified() && pred.boxes.size() == 5, "not 5 certified boxes");
  const auto roots = solve_roots_direct(c);
  for (std::size_t i = 0; i < pred.boxes.size(); ++i) {
    const auto& b = pred.boxes[i];
    v.require(std::abs(b.log_r_center + 2) < 1e-12, "box off log r = -2");
    v.require(winding_count(c, box_contour(b)) == 1, "winding != 1");
    v.require(std::count_if(roots.begin(), roots.end(), [&](LogPoint z) { return b.contains(z); }) == 1,
              "direct root count in box != 1");
    for (std::size_t j = i + 1; j < pred.boxes.size(); ++j)
      v.require(phase_distance(b.phase_center, pred.boxes[j].phase_center) > b.zeta + pred.boxes[j].zeta,
                "boxes overlap");
  }
  const auto real = predict_real_roots(c);
  v.require(real.size() == 1 && real[0].sign == -1 && std::abs(real[0].log_r + 2) < 1e-12, "real roots != {-e^-2}");
  const bool direct_real = std::any_of(roots.begin(), roots.end(), [](LogPoint z) {
    return std::abs(z.log_r + 2) < 1e-9 && phase_distance(z.arg, kPi) < 1e-9;
  });
  v.require(direct_real, "direct solver misses -e^-2");
  const double t = seconds_since(t0);
  v.require(t < 1, "runtime");
  v.detail += fmt("h=%.1f delta=%.4f zeta=%.4f (%.3f s)", pred.segments[0].h, pred.segments[0].certificate->delta,
                  pred.segments[0].certificate->zeta, t);
  return v;
}

Verdict localization() {
  Verdict v;
  const auto t0 = Clock::now();
  const auto r = run_root_localization(TailSpec::pareto_log(0.5), 200, 100, 5000);
  const double t = seconds_since(t0);
  const auto& rate = r.find("box_verification_rate");
  const auto& count = r.find("certified_box_count_equals_n");
  const auto& guard = r.find("contour_guard_failures");
  v.detail = fmt("verified boxes %.0f, success rate %.4f, box count = n in %.4f of certified trials (%.1f s)",
                 r.find("verified_boxes").estimate, rate.estimate, count.estimate, t);
  v.require(rate.estimate == 1.0, "a verified box failed");
  v.require(count.estimate == 1.0, "box count != n");
  v.require(guard.estimate == 0.0, "contour guard tripped");
  v.require(t < 300, "runtime");
  return v;
}

Verdict small_degree_oracle() {
  Verdict v;
  std::size_t accepted = 0, drawn = 0, boxes = 0;
  for (std::uint64_t t = 0; accepted < 200 && drawn < 100000; ++t, ++drawn) {
    Rng rng = Rng::substream(6000, t);
    const std::size_t degree = 2 + rng.next_u64() % 49;
    auto spec = TailSpec::pareto_log(rng.uniform(0.5, 1.5));
    spec.complex_coeffs = rng.bernoulli(0.5);
    const auto c = sample_polynomial(spec, degree, rng);
    double lo = c[0].log_mod(), hi = lo;
    for (const auto& a : c) {
      lo = std::min(lo, a.log_mod());
      hi = std::max(hi, a.log_mod());
    }
    if (hi - lo > 600) continue;
    const auto pred = predict_root_boxes(c);
    if (!pred.all_certified()) continue;
    ++accepted;
    const auto roots = solve_roots_direct(c);
    boxes += pred.boxes.size();
    std::vector<int> per_box(pred.boxes.size(), 0);
    for (const auto& z : roots) {
      int hits = 0;
      for (std::size_t b = 0; b < pred.boxes.size(); ++b)
        if (pred.boxes[b].contains(z)) ++hits, ++per_box[b];
      if (hits != 1) v.require(false, "root in " + std::to_string(hits) + " boxes, instance " + std::to_string(t));
    }
    for (int h : per_box)
      if (h != 1) v.require(false, "box with " + std::to_string(h) + " roots, instance " + std::to_string(t));
  }
  v.require(accepted == 200, "too few certifiable instances");
  v.detail = fmt("%.0f instances (%.0f drawn), %.0f boxes", double(accepted), double(drawn), double(boxes)) +
             (v.detail.empty() ? "" : "; " + v.detail);
  return v;
}

// Exact law of the factorized count over independent signs and tau parity.
std::vector<double> brute_force_law(double c, double p, bool odd_n) {
  std::vector<double> law(5, 0.0);
  const std::size_t n = odd_n ? 11 : 10;
  for (int s0 : {1, -1})
    for (int st : {1, -1})
      for (int sn : {1, -1})
        for (std::size_t tau : {4u, 5u}) {
          const double w = (s0 > 0 ? p : 1 - p) * (st > 0 ? c : 1 - c) * (sn > 0 ? p : 1 - p) * 0.5;
          // real roots of unit-modulus two-term factors are among +1, -1
          auto real_solutions = [](int a, int b, std::size_t e) {
            int k = 0;
            for (int x : {1, -1}) k += e > 0 && a * (e % 2 ? x : 1) + b == 0;
            return k;
          };
          const int oracle = real_solutions(st, s0, tau) + real_solutions(sn, st, n - tau);
          if (oracle != factorized_real_root_count(s0, st, sn, tau, n)) return {};
          law[oracle] += w;
        }
  return law;
}

Verdict alpha0_law() {
  Verdict v;
  const auto even = run_real_roots(TailSpec::slow_log(), 2000, 10000, 7000, Parity::Even);
  const auto odd = run_real_roots(TailSpec::slow_log(), 2001, 10000, 7001, Parity::Odd);
  for (const auto* r : {&even, &odd})
    for (const auto& s : r->statistics)
      if (s.name.rfind("freq_", 0) == 0) {
        if (s.z) v.detail += s.name + fmt("=%.4f(z=%+.2f) ", s.estimate, *s.z);
        v.require(s.pass, s.name + " outside 3 sigma");
      }
  v.detail += fmt("good event %.3f/%.3f; ", even.find("good_event_fraction").estimate,
                  odd.find("good_event_fraction").estimate);
  double worst = 0;
  int configs = 0;
  for (double c : {0.0, 0.2, 0.5, 0.7, 1.0})
    for (double p : {0.0, 0.3, 0.5, 0.9, 1.0})
      for (bool odd_n : {false, true}) {
        const auto law = brute_force_law(c, p, odd_n);
        if (law.empty()) {
          v.require(false, "sign/parity logic disagrees with the +-1 oracle");
          continue;
        }
        const auto d = alpha0_real_distribution(c, p, odd_n ? Parity::Odd : Parity::Even);
        for (int m = 0; m <= 4; ++m) {
          const auto it = std::find(d.support.begin(), d.support.end(), m);
          const double want = it == d.support.end() ? 0.0 : d.probs[it - d.support.begin()];
          worst = std::max(worst, std::abs(law[m] - want));
        }
        ++configs;
      }
  v.detail += fmt("brute force over %.0f (c,p,parity) laws, max diff %.1e", configs, worst);
  v.require(worst < 1e-15, "brute-force law differs");
  return v;
}

Verdict process_convergence() {
  Verdict v;
  for (double a : {1.0, 2.0}) {
    const auto r = run_process_convergence(TailSpec::pareto_log(a), 10000, standard_rectangles(), 1000,
                                           8000 + int(a));
    double worst = 0;
    for (const auto& s : r.statistics)
      if (s.name.rfind("mean_count_", 0) == 0) {
        worst = std::max(worst, std::abs(*s.z));
        v.require(s.pass, s.name + fmt(" (alpha %.0f) outside 3 sigma", a));
      }
    v.detail += fmt("a=%.0f max|z|=%.2f ", a, worst);
  }
  return v;
}

Verdict properties() {
  Verdict v;
  const std::pair<const char*, std::function<props::Outcome()>> suites[] = {
      {"hull", [] { return props::hull_matches_bruteforce(1000, 9001); }},
      {"eval", [] { return props::eval_matches_horner(2000, 9002); }},
      {"conjugate", [] { return props::conjugate_symmetry(300, 9003); }},
      {"homogeneity", [] { return props::scaling_homogeneity(300, 9004); }},
      {"determinism", [] { return props::report_determinism(); }},
  };
  for (const auto& [name, run] : suites) {
    const auto o = run();
    v.detail += std::string(name) + fmt(":%.0f ", double(o.cases));
    v.require(o.ok, std::string(name) + ": " + o.detail);
  }
  return v;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Verdict()>> criteria[] = {
      {"1 E L_alpha table by simulation", table_by_simulation},
      {"2 E L_alpha closed form vs quadrature", cross_route},
      {"3 P[L_alpha = 2] = 1 - alpha", two_segments},
      {"4 degree-5 certificate", degree_five},
      {"5 localization at n = 200", localization},
      {"6 small-degree oracle equivalence", small_degree_oracle},
      {"7 alpha = 0 real-root law", alpha0_law},
      {"8 point-process convergence", process_convergence},
      {"9 property suites", properties},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    failed += !v.pass;
    std::printf("[%s] criterion %s: %s\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of 9 criteria failed\n", failed);
  return failed ? 1 : 0;
}
