#pragma once

#include <complex>
#include <limits>
#include <numbers>

namespace logroots {

/// Wraps an angle into the canonical interval (-pi, pi].
double wrap_phase(double phase);

/// Complex number stored as (natural log of modulus, phase).
///
/// Coefficients of the polynomials studied here reach magnitudes such as
/// exp(n^2) for n in the thousands, far outside the range of double. Every
/// coefficient and every intermediate term is carried in this form and only
/// brought back to native arithmetic after shifting by a common maximum.
///
/// log_mod == -infinity encodes exact zero; its phase is then 0.
class LogComplex {
 public:
  LogComplex() = default;
  LogComplex(double log_mod, double phase);

  static LogComplex zero() { return {}; }
  static LogComplex from_complex(std::complex<double> z);
  /// Real number with the given sign (+1 or -1) and log-modulus.
  static LogComplex from_signed(int sign, double log_mod);

  double log_mod() const { return log_mod_; }
  double phase() const { return phase_; }
  bool is_zero() const { return log_mod_ == -std::numeric_limits<double>::infinity(); }

  /// +1 for phase 0, -1 for phase pi, 0 for zero; throws for non-real values.
  int real_sign() const;
  bool is_real() const;

  /// Native value; overflows to inf / underflows to 0 outside the double range.
  std::complex<double> to_complex() const;

  LogComplex operator*(const LogComplex& other) const;
  LogComplex operator/(const LogComplex& other) const;
  LogComplex operator-() const;
  /// Integer power, exact in log-modulus.
  LogComplex pow(int k) const;

  bool operator==(const LogComplex& other) const = default;

 private:
  double log_mod_ = -std::numeric_limits<double>::infinity();
  double phase_ = 0.0;
};

/// Geodesic distance between two angles on the unit circle, in [0, pi].
double phase_distance(double a, double b);

}  // namespace logroots
