#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "logroots/log_complex.hpp"
#include "logroots/rng.hpp"

namespace logroots {

enum class TailFamily {
  ParetoLog,  ///< P[log|xi| > t] = t^-alpha for t >= 1
  FigOneB,    ///< P[log|xi| > t] = t^-2 for t >= 1, positive signs
  SlowLog,    ///< P[log|xi| > t] = 1 / log t for t >= e (alpha = 0 regime)
  Gaussian,   ///< standard normal coefficients, no logarithmic tail index
};

std::string to_string(TailFamily family);
TailFamily tail_family_from_string(const std::string& name);

/// Coefficient law.
///
/// The modulus is drawn through its tail level U = P[log|xi| > log|x|], which
/// is uniform on (0,1) for every continuous family. The sign is drawn
/// independently of the modulus, except that draws in the upper tail
/// (U < tail_fraction()) are positive with probability `c` while the rest use
/// a compensating probability so that P[xi > 0] = p holds exactly.
struct TailSpec {
  TailFamily family = TailFamily::ParetoLog;
  double alpha = 1.0;
  double c = 0.5;  ///< limit of P[xi > t] / P[|xi| > t]
  double p = 0.5;  ///< P[xi > 0]
  bool complex_coeffs = false;

  static TailSpec pareto_log(double alpha, double c = 0.5, double p = 0.5);
  static TailSpec fig_one_b();
  static TailSpec slow_log(double c = 0.5, double p = 0.5);
  static TailSpec gaussian(double p = 0.5);

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
  bool has_tail_index() const {
    return family == TailFamily::ParetoLog || family == TailFamily::FigOneB;
  }
  double tail_index() const;
  /// Tail level below which the sign probability is `c`.
  double tail_fraction() const;
  /// Sign probability used for draws outside the upper tail.
  double bulk_sign_probability() const;

  bool operator==(const TailSpec&) const = default;
};

struct NormalizingPair {
  double a_n;
  double b_n;
};

/// F(t) = P[log|xi| > t].
double tail_function(const TailSpec& spec, double t);

/// Inverse of tail_function: the log-modulus whose tail probability is `level`.
double log_modulus_at_level(const TailSpec& spec, double level);

/// Phase of a coefficient whose modulus sits at tail level `level`:
/// 0 or pi in real mode, uniform on (-pi, pi] in complex mode.
double draw_phase(const TailSpec& spec, double level, Rng& rng);

LogComplex sample_coefficient(const TailSpec& spec, Rng& rng);

std::vector<LogComplex> sample_polynomial(const TailSpec& spec, std::size_t degree, Rng& rng);

/// a_n with F(a_n) = 1/n, b_n = n / a_n.
NormalizingPair normalizing_sequences(const TailSpec& spec, std::size_t n);

}  // namespace logroots
