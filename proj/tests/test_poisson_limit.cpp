#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "logroots/limit_formulas.hpp"
#include "logroots/poisson_limit.hpp"
#include "logroots/stats.hpp"

using namespace logroots;

namespace {

Majorant triangle() {
  const std::vector<PlanarPoint> pts{{0.5, 1.0}};
  return least_concave_majorant(pts, 1.0, true);
}

// 2-D quadrature of alpha v^(-alpha-1) over {0<u<1, m(u) < v < v_min}.
double miss_mass_quadrature(const Majorant& m, double alpha, double v_min) {
  const int nu = 4000, nw = 64;
  double total = 0.0;
  for (int i = 0; i < nu; ++i) {
    // u = s^2 near each endpoint tames the u^-alpha singularity
    const double s = (i + 0.5) / nu;
    for (const auto& [u, jac] : {std::pair{0.5 * s * s, s}, std::pair{1.0 - 0.5 * s * s, s}}) {
      const double y = evaluate(m, u);
      if (y >= v_min) continue;
      const double span = std::log(v_min / y);
      double inner = 0.0;
      for (int j = 0; j < nw; ++j) {
        const double w = (j + 0.5) / nw;
        const double v = y * std::exp(w * span);
        inner += alpha * std::pow(v, -alpha) * span / nw;
      }
      total += inner * jac / nu;
    }
  }
  return total;
}

}  // namespace

TEST_CASE("sample_rho intensities") {
  Rng rng(11);
  const int reps = 20000;
  RunningStats n1, n2, above;
  for (int i = 0; i < reps; ++i) {
    n1.add(double(sample_rho(1.0, 1.0, rng).atoms.size()));
    const auto s = sample_rho(0.5, 1.0, rng);
    above.add(double(std::count_if(s.atoms.begin(), s.atoms.end(), [](auto a) { return a.y > 4.0; })));
  }
  for (int i = 0; i < 2000; ++i) n2.add(double(sample_rho(2.0, 0.1, rng).atoms.size()));
  CHECK(std::abs(n1.summary().mean - 1.0) < 3 * n1.summary().std_error());
  CHECK(std::abs(n2.summary().mean - 100.0) < 3 * n2.summary().std_error());
  CHECK(std::abs(above.summary().mean - 0.5) < 3 * above.summary().std_error());
  CHECK_THROWS(sample_rho(0.0, 1.0, rng));
  CHECK_THROWS(sample_rho(1.0, 0.0, rng));
}

TEST_CASE("sample_rho atoms lie in the strip") {
  Rng rng(2);
  auto s = sample_rho(0.7, 0.5, rng);
  extend_band(s, 0.1, rng);
  CHECK(s.v_min == 0.1);
  for (const auto& a : s.atoms) {
    CHECK(a.x >= 0.0);
    CHECK(a.x <= 1.0);
    CHECK(a.y >= 0.1);
  }
  attach_marks(s, 1.0, rng);
  REQUIRE(s.marks.has_value());
  CHECK(s.marks->size() == s.atoms.size());
  for (const auto& mk : *s.marks) CHECK(mk.sigma == 1);
}

TEST_CASE("miss_mass closed form against quadrature") {
  const auto t = triangle();
  CHECK(miss_mass(t, 0.5, 0.01) == doctest::Approx(0.1));
  CHECK(miss_mass_quadrature(t, 0.5, 0.01) == doctest::Approx(0.1).epsilon(2e-3));
  CHECK(miss_mass(t, 0.3, 0.2) == doctest::Approx(miss_mass_quadrature(t, 0.3, 0.2)).epsilon(2e-3));
  for (double a : {0.2, 0.5, 0.8})
    CHECK(miss_mass(t, a, 0.005) / miss_mass(t, a, 0.01) == doctest::Approx(std::pow(2.0, a - 1.0)));
  CHECK(miss_mass(t, 0.5, 1e-12) < 1e-5);
  CHECK_THROWS(miss_mass(t, 1.0, 0.01));
}

TEST_CASE("sample_majorant") {
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    const auto s = sample_majorant(0.5, rng);
    CHECK(s.segment_count >= 2);
    CHECK(s.majorant.is_pinned());
    CHECK(s.miss_certificate <= 1e-6);
    // every atom lies on or below the majorant
    for (const auto& a : s.process.atoms) CHECK(a.y <= evaluate(s.majorant, a.x) * (1 + 1e-12) + 1e-12);
  }
  RunningStats two;
  for (int i = 0; i < 20000; ++i) two.add(sample_majorant(0.5, rng).segment_count == 2 ? 1.0 : 0.0);
  CHECK(std::abs(two.summary().mean - 0.5) < 3 * binomial_std_error(0.5, 20000));
}

TEST_CASE("windowed majorant") {
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    const auto w = windowed_majorant(1.0, 0.25, rng);
    REQUIRE(w.window.segment_count() >= 1);
    for (const auto& s : w.window.segments) CHECK(std::isfinite(s.R));
    CHECK(windowed_majorant(2.0, 0.4, rng).window.segment_count() >= 1);
  }
  // the smallest R in the window decreases as the window widens
  std::vector<double> wide, narrow;
  for (int i = 0; i < 2000; ++i) {
    Rng a = Rng::substream(5, i), b = Rng::substream(5, i);
    auto min_r = [](const WindowedSample& w) {
      double r = w.window.segments.front().R;
      for (const auto& s : w.window.segments) r = std::min(r, s.R);
      return r;
    };
    wide.push_back(min_r(windowed_majorant(1.0, 0.1, a)));
    narrow.push_back(min_r(windowed_majorant(1.0, 0.2, b)));
  }
  std::sort(wide.begin(), wide.end());
  std::sort(narrow.begin(), narrow.end());
  CHECK(wide[wide.size() / 2] < narrow[narrow.size() / 2]);
}

TEST_CASE("limit measure") {
  const auto lm = limit_measure(triangle());
  REQUIRE(lm.components.size() == 2);
  CHECK(lm.components[0].weight == doctest::Approx(0.5));
  CHECK(lm.components[0].log_radius == doctest::Approx(-2.0));
  CHECK(lm.components[1].log_radius == doctest::Approx(2.0));
  CHECK(lm.total_weight() == doctest::Approx(1.0));
  const std::vector<PlanarPoint> flat{{0, 0}, {1, 0}};
  const auto f = limit_measure(least_concave_majorant(flat, 1.0, true));
  REQUIRE(f.components.size() == 1);
  CHECK(f.components[0].weight == 1.0);
  CHECK(f.components[0].log_radius == 0.0);
}

TEST_CASE("real-root limit boundary conventions") {
  const std::vector<PlanarPoint> flat{{0, 0}, {1, 0}};
  const auto f = least_concave_majorant(flat, 1.0, true);
  Rng rng(6);
  for (int i = 0; i < 50; ++i) {
    // c irrelevant, p = 1 forces equal boundary sigmas
    const auto odd = real_root_limit(f, 0.5, 1.0, Parity::Odd, rng);
    REQUIRE(odd.atoms.size() == 1);
    CHECK(odd.atoms[0].sign == -1);
    CHECK(odd.atoms[0].value() == doctest::Approx(-1.0));
    CHECK(real_root_limit(f, 0.5, 1.0, Parity::Even, rng).atoms.empty());
  }
  const auto t = triangle();
  const std::vector<Mark> marks{{1, 1}, {-1, -1}, {1, 1}};
  const auto atoms = real_root_atoms(t, marks);
  // sigma flips on both segments, sigma*pi does not
  REQUIRE(atoms.size() == 2);
  CHECK(atoms[0].sign == 1);
  CHECK(atoms[0].value() == doctest::Approx(std::exp(-2.0)));
  CHECK(atoms[1].segment == 1);
}

TEST_CASE("mean real-root limit count equals E L at c = p = 1/2") {
  RunningStats count;
  for (int i = 0; i < 20000; ++i) {
    Rng rng = Rng::substream(8, i);
    const auto s = sample_majorant(0.5, rng);
    count.add(double(real_root_limit(s.majorant, 0.5, 0.5, Parity::Even, rng).atoms.size()));
  }
  CHECK(std::abs(count.summary().mean - expected_segments_closed(0.5)) < 3 * count.summary().std_error());
}
