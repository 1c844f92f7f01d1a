#include "logroots/log_complex.hpp"

#include <cmath>
#include <stdexcept>

namespace logroots {

double wrap_phase(double phase) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (!std::isfinite(phase)) throw std::invalid_argument("wrap_phase: non-finite phase");
  double w = std::remainder(phase, two_pi);  // in [-pi, pi]
  if (w <= -std::numbers::pi) w += two_pi;
  return w;
}

double phase_distance(double a, double b) { return std::abs(wrap_phase(a - b)); }

LogComplex::LogComplex(double log_mod, double phase) : log_mod_(log_mod) {
  if (std::isnan(log_mod) || log_mod == std::numeric_limits<double>::infinity())
    throw std::invalid_argument("LogComplex: log-modulus must be finite or -inf");
  phase_ = is_zero() ? 0.0 : wrap_phase(phase);
}

LogComplex LogComplex::from_complex(std::complex<double> z) {
  if (z == std::complex<double>(0.0, 0.0)) return zero();
  return {std::log(std::abs(z)), std::arg(z)};
}

LogComplex LogComplex::from_signed(int sign, double log_mod) {
  if (sign == 0) return zero();
  return {log_mod, sign > 0 ? 0.0 : std::numbers::pi};
}

bool LogComplex::is_real() const {
  return is_zero() || phase_ == 0.0 || phase_ == std::numbers::pi;
}

int LogComplex::real_sign() const {
  if (is_zero()) return 0;
  if (phase_ == 0.0) return 1;
  if (phase_ == std::numbers::pi) return -1;
  throw std::domain_error("LogComplex::real_sign: value is not real");
}

std::complex<double> LogComplex::to_complex() const {
  if (is_zero()) return {0.0, 0.0};
  return std::polar(std::exp(log_mod_), phase_);
}

LogComplex LogComplex::operator*(const LogComplex& other) const {
  if (is_zero() || other.is_zero()) return zero();
  return {log_mod_ + other.log_mod_, phase_ + other.phase_};
}

LogComplex LogComplex::operator/(const LogComplex& other) const {
  if (other.is_zero()) throw std::domain_error("LogComplex: division by zero");
  if (is_zero()) return zero();
  return {log_mod_ - other.log_mod_, phase_ - other.phase_};
}

LogComplex LogComplex::operator-() const {
  if (is_zero()) return zero();
  return {log_mod_, phase_ + std::numbers::pi};
}

LogComplex LogComplex::pow(int k) const {
  if (k == 0) return {0.0, 0.0};
  if (is_zero()) {
    if (k < 0) throw std::domain_error("LogComplex: negative power of zero");
    return zero();
  }
  return {k * log_mod_, std::fmod(k * phase_, 2.0 * std::numbers::pi)};
}

}  // namespace logroots
