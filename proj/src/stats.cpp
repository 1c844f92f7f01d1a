#include "logroots/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace logroots {

namespace {

std::vector<WeightedPoint> sorted_checked(std::span<const WeightedPoint> s, const char* which) {
  if (s.empty()) throw std::invalid_argument(std::string("distance_stats: empty sample ") + which);
  double total = 0.0;
  for (const auto& p : s) {
    if (!(p.w >= 0.0) || !std::isfinite(p.x))
      throw std::invalid_argument("distance_stats: invalid point or weight");
    total += p.w;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("distance_stats: weights must sum to 1");
  std::vector<WeightedPoint> v(s.begin(), s.end());
  std::sort(v.begin(), v.end(), [](const auto& l, const auto& r) { return l.x < r.x; });
  return v;
}

}  // namespace

DistanceStats distance_stats(std::span<const WeightedPoint> a, std::span<const WeightedPoint> b) {
  const auto sa = sorted_checked(a, "a");
  const auto sb = sorted_checked(b, "b");
  DistanceStats out;
  double fa = 0.0, fb = 0.0;
  std::size_t i = 0, j = 0;
  double x = std::min(sa.front().x, sb.front().x);
  while (i < sa.size() || j < sb.size()) {
    const double next = std::min(i < sa.size() ? sa[i].x : std::numeric_limits<double>::infinity(),
                                 j < sb.size() ? sb[j].x : std::numeric_limits<double>::infinity());
    out.wasserstein1 += std::abs(fa - fb) * (next - x);
    x = next;
    while (i < sa.size() && sa[i].x == x) fa += sa[i++].w;
    while (j < sb.size() && sb[j].x == x) fb += sb[j++].w;
    out.ks = std::max(out.ks, std::abs(fa - fb));
  }
  return out;
}

std::vector<WeightedPoint> uniform_weights(std::span<const double> xs) {
  std::vector<WeightedPoint> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back({x, 1.0 / static_cast<double>(xs.size())});
  return out;
}

double ks_critical_value(std::size_t n, double level) {
  if (n == 0 || !(level > 0.0 && level < 1.0))
    throw std::invalid_argument("ks_critical_value: need n >= 1 and level in (0,1)");
  return std::sqrt(-std::log(level / 2.0) / 2.0) / std::sqrt(static_cast<double>(n));
}

double SampleSummary::std_error() const {
  return count > 1 ? std::sqrt(variance / static_cast<double>(count)) : 0.0;
}

void RunningStats::add(double x) {
  ++n_;
  const double d = x - mean_;
  mean_ += d / static_cast<double>(n_);
  m2_ += d * (x - mean_);
}

SampleSummary RunningStats::summary() const {
  return {n_, mean_, n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0};
}

SampleSummary summarize(std::span<const double> xs) {
  RunningStats r;
  for (double x : xs) r.add(x);
  return r.summary();
}

double binomial_std_error(double p, std::size_t n) {
  if (n == 0 || !(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("binomial_std_error: need n >= 1 and p in [0,1]");
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

double z_score(double estimate, double theory, double std_error) {
  if (std_error > 0.0) return (estimate - theory) / std_error;
  if (estimate == theory) return 0.0;
  return estimate > theory ? std::numeric_limits<double>::infinity()
                           : -std::numeric_limits<double>::infinity();
}

}  // namespace logroots
