#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace logroots {

struct WeightedPoint {
  double x = 0.0;
  double w = 0.0;
};

struct DistanceStats {
  double wasserstein1 = 0.0;
  double ks = 0.0;
};

/// Exact 1-Wasserstein distance (area between the CDFs) and Kolmogorov-Smirnov
/// distance between two discrete distributions on the line. Weights of each
/// sample must be nonnegative and sum to 1 (within 1e-9).
DistanceStats distance_stats(std::span<const WeightedPoint> a, std::span<const WeightedPoint> b);

/// Equal weights 1/size.
std::vector<WeightedPoint> uniform_weights(std::span<const double> xs);

/// Asymptotic one-sample KS critical value sqrt(-log(level/2) / 2) / sqrt(n).
double ks_critical_value(std::size_t n, double level);

struct SampleSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  ///< unbiased
  double std_error() const;
};

/// Streaming mean / variance (Welford).
class RunningStats {
 public:
  void add(double x);
  SampleSummary summary() const;

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

SampleSummary summarize(std::span<const double> xs);

/// sqrt(p (1-p) / n).
double binomial_std_error(double p, std::size_t n);

/// (estimate - theory) / std_error; 0 when both agree exactly, +-inf when the
/// error is zero and they differ.
double z_score(double estimate, double theory, double std_error);

}  // namespace logroots
