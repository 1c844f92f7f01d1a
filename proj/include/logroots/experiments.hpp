#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "logroots/coeff_models.hpp"
#include "logroots/poisson_limit.hpp"

namespace logroots {

enum class ExperimentKind { SegmentCount, RootLocalization, RealRoots, ProcessConvergence };

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& name);
std::string to_string(Parity parity);
Parity parity_from_string(const std::string& name);

/// Counting window [u1, u2] x [t, inf) of the rescaled coefficient process.
struct Rectangle {
  double u1 = 0.0;
  double u2 = 1.0;
  double t = 1.0;
  bool operator==(const Rectangle&) const = default;
};

/// [0,1]x[1,inf), [0,1/2]x[2,inf), [1/4,3/4]x[1/2,inf), [1/2,1]x[1,inf), [0,1]x[3,inf).
std::vector<Rectangle> standard_rectangles();

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::SegmentCount;
  TailSpec spec;  ///< spec.alpha is the index for segment_count
  std::size_t n = 0;
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  double miss_tol = 1e-6;
  double kappa = 0.05;
  Parity parity = Parity::Even;
  std::vector<Rectangle> rectangles;
  std::string output_path;
  std::string raw_csv_path;

  /// Throws std::invalid_argument when a kind-specific parameter is missing
  /// or out of range.
  void validate() const;
  bool operator==(const ExperimentConfig&) const = default;
};

struct StatisticRecord {
  std::string name;
  double estimate = 0.0;
  double std_error = 0.0;
  std::optional<double> theory;
  std::optional<double> z;
  double band = 3.0;  ///< |z| <= band passes; 5 for asymptotic-in-n targets
  bool pass = true;
  bool operator==(const StatisticRecord&) const = default;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<StatisticRecord> statistics;
  std::optional<double> uncertified_fraction;
  double runtime_seconds = 0.0;
  /// Per-trial data for CSV output; not part of the JSON report.
  std::vector<std::string> raw_columns;
  std::vector<std::vector<double>> raw_rows;

  bool all_pass() const;
  /// Throws std::out_of_range for an unknown name.
  const StatisticRecord& find(const std::string& name) const;
};

/// Record compared against a theory value with the given pass band.
StatisticRecord compare(std::string name, double estimate, double std_error, double theory,
                        double band = 3.0);
/// Informational record without a theory value.
StatisticRecord observe(std::string name, double estimate, double std_error = 0.0);

/// Worker count: LOGROOTS_THREADS if set and positive, else the hardware
/// concurrency, never more than the number of tasks.
std::size_t worker_count(std::size_t tasks);

/// Evaluates fn(i) for i in [0, count) on worker threads and returns the
/// results in index order. Exceptions are rethrown on the caller's thread.
template <class Fn>
auto parallel_trials(std::size_t count, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using Result = decltype(fn(std::size_t{}));
  std::vector<std::optional<Result>> slots(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (std::size_t i; !failed && (i = next++) < count;) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  const std::size_t workers = worker_count(count);
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  std::vector<Result> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

/// Mean number of majorant segments and frequency of exactly two segments.
ExperimentReport run_segment_count(double alpha, std::size_t trials, std::uint64_t seed,
                                   double miss_tol = 1e-6);

/// Newton-polygon boxes of random polynomials, checked by winding numbers on
/// up to 50 random boxes plus every box of a sign-change segment.
ExperimentReport run_root_localization(const TailSpec& spec, std::size_t n, std::size_t trials,
                                       std::uint64_t seed, double kappa = 0.05);

/// Real-root counts. SlowLog: surrogate factorized equation against the
/// alpha = 0 limit law. Tail-indexed families: predicted real roots against
/// the limit mean.
ExperimentReport run_real_roots(const TailSpec& spec, std::size_t n, std::size_t trials,
                                std::uint64_t seed, Parity parity, double kappa = 0.05);

/// Counts of {(k/n, log|xi_k| / a_n)} in each rectangle against (u2-u1) t^-alpha.
ExperimentReport run_process_convergence(const TailSpec& spec, std::size_t n,
                                         const std::vector<Rectangle>& rectangles,
                                         std::size_t trials, std::uint64_t seed);

ExperimentReport run_experiment(const ExperimentConfig& config);

/// Deterministic inequalities of the alpha = 0 good event, evaluated on the
/// tail levels U_k (log log|xi_k| = 1/U_k): the largest term must dominate every
/// other log-modulus per unit index by more than n^(2A), sit at an index in
/// (kappa n, (1-kappa) n), and the end coefficients must be moderate.
bool alpha0_good_event(const std::vector<double>& levels, double kappa, double A = 2.0);

}  // namespace logroots
