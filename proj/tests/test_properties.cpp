#include <doctest.h>

#include <cmath>
#include <numbers>

#include "logroots/limit_formulas.hpp"
#include "logroots/poisson_limit.hpp"
#include "property_checks.hpp"

using namespace logroots;

TEST_CASE("hull against the brute-force oracle") {
  const auto o = props::hull_matches_bruteforce(1000, 101);
  INFO(o.detail);
  CHECK(o.ok);
  CHECK(o.cases == 1000);
}

TEST_CASE("log-domain evaluation against Horner") {
  const auto o = props::eval_matches_horner(2000, 102);
  INFO(o.detail);
  CHECK(o.ok);
}

TEST_CASE("conjugate symmetry") {
  const auto o = props::conjugate_symmetry(300, 103);
  INFO(o.detail);
  CHECK(o.ok);
}

TEST_CASE("homogeneity under coefficient scaling") {
  const auto o = props::scaling_homogeneity(300, 104);
  INFO(o.detail);
  CHECK(o.ok);
}

TEST_CASE("report determinism") {
  const auto o = props::report_determinism();
  INFO(o.detail);
  CHECK(o.ok);
}

TEST_CASE("boxes of one prediction are disjoint and complete") {
  for (std::uint64_t t = 0; t < 200; ++t) {
    Rng rng = Rng::substream(105, t);
    const auto c = sample_polynomial(TailSpec::pareto_log(0.5), 2 + rng.next_u64() % 300, rng);
    const auto pred = predict_root_boxes(c);
    if (pred.all_certified()) CHECK(pred.boxes.size() == pred.degree);
    for (std::size_t i = 0; i < pred.boxes.size(); ++i)
      for (std::size_t j = i + 1; j < pred.boxes.size(); ++j) {
        const auto &a = pred.boxes[i], &b = pred.boxes[j];
        const bool rings_apart = std::abs(a.log_r_center - b.log_r_center) > a.delta + b.delta;
        const bool sectors_apart = phase_distance(a.phase_center, b.phase_center) > a.zeta + b.zeta;
        CHECK((rings_apart || sectors_apart));
      }
  }
}

TEST_CASE("Poisson counts in rectangles: chi-square goodness of fit") {
  // [0.2,0.7] x [1.5, inf), alpha = 1: mean 0.5 / 1.5 = 1/3
  const double mean = 0.5 / 1.5;
  const int samples = 10000, cells = 4;  // 0, 1, 2, >= 3
  std::vector<int> observed(cells, 0);
  Rng rng(106);
  for (int s = 0; s < samples; ++s) {
    const auto p = sample_rho(1.0, 1.0, rng);
    int k = 0;
    for (const auto& a : p.atoms) k += a.x >= 0.2 && a.x <= 0.7 && a.y >= 1.5;
    ++observed[std::min(k, cells - 1)];
  }
  double expected_tail = 1.0, chi2 = 0.0, pk = std::exp(-mean);
  for (int k = 0; k < cells; ++k) {
    const double prob = k + 1 < cells ? pk : expected_tail;
    chi2 += std::pow(observed[k] - samples * prob, 2) / (samples * prob);
    expected_tail -= pk;
    pk *= mean / (k + 1);
  }
  CHECK(chi2 < 11.345);  // chi-square 1% point, 3 degrees of freedom
}

TEST_CASE("majorant certificate, atom bound and measure completeness") {
  for (std::uint64_t t = 0; t < 300; ++t) {
    Rng rng = Rng::substream(107, t);
    const auto s = sample_majorant(0.3 + 0.001 * double(t), rng);
    CHECK(s.miss_certificate <= 1e-6);
    const auto lim = real_root_limit(s.majorant, 0.3, 0.6, t % 2 ? Parity::Odd : Parity::Even, rng);
    CHECK(lim.atoms.size() <= 2 * s.segment_count);
    const auto mu = limit_measure(s.majorant);
    for (const auto& c : mu.components) CHECK(c.weight > 0.0);
    CHECK(mu.total_weight() == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("digamma recurrence and reflection") {
  Rng rng(108);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.uniform(0.01, 0.99);
    const double reflect = digamma(1 - x) - digamma(x) - std::numbers::pi / std::tan(std::numbers::pi * x);
    CHECK(std::abs(reflect) < 1e-12 * (1 + 1 / x));
    const double y = rng.uniform(0.01, 50.0);
    CHECK(std::abs(digamma(y + 1) - digamma(y) - 1 / y) < 1e-12 * (1 + 1 / y));
  }
}
