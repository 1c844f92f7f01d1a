#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace logroots {

/// SplitMix64 finalizer; used to derive independent seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of substream `index` of `master_seed`:
///   splitmix64(master_seed ^ splitmix64(index + 1)).
/// Trial i of every Monte Carlo driver uses substream i, so aggregates do not
/// depend on execution order.
constexpr std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t index) {
  return splitmix64(master_seed ^ splitmix64(index + 1));
}

/// Random stream handle. Not thread-safe; use one per thread / trial.
class Rng {
 public:
  using engine_type = std::mt19937_64;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng substream(std::uint64_t master_seed, std::uint64_t index) {
    return Rng(substream_seed(master_seed, index));
  }

  /// Uniform on the open interval (0, 1); 53 random bits.
  double uniform_open() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform_open(); }
  bool bernoulli(double p) { return uniform_open() < p; }
  /// +1 with probability p, -1 otherwise.
  int sign(double p) { return bernoulli(p) ? 1 : -1; }
  double exponential() { return -std::log(uniform_open()); }
  std::uint64_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    return std::poisson_distribution<std::uint64_t>(mean)(engine_);
  }
  double normal() { return std::normal_distribution<double>()(engine_); }
  std::uint64_t next_u64() { return engine_(); }

  engine_type& engine() { return engine_; }

 private:
  engine_type engine_;
};

}  // namespace logroots
