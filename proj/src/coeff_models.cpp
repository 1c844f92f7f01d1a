#include "logroots/coeff_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace logroots {

std::string to_string(TailFamily family) {
  switch (family) {
    case TailFamily::ParetoLog: return "pareto_log";
    case TailFamily::FigOneB: return "fig1b";
    case TailFamily::SlowLog: return "slow_log";
    case TailFamily::Gaussian: return "gaussian";
  }
  return "unknown";
}

TailFamily tail_family_from_string(const std::string& name) {
  if (name == "pareto_log" || name == "pareto") return TailFamily::ParetoLog;
  if (name == "fig1b") return TailFamily::FigOneB;
  if (name == "slow_log" || name == "slowlog") return TailFamily::SlowLog;
  if (name == "gaussian") return TailFamily::Gaussian;
  throw std::invalid_argument("unknown tail family '" + name + "'");
}

TailSpec TailSpec::pareto_log(double alpha, double c, double p) {
  TailSpec s{TailFamily::ParetoLog, alpha, c, p, false};
  s.validate();
  return s;
}

TailSpec TailSpec::fig_one_b() { return {TailFamily::FigOneB, 2.0, 1.0, 1.0, false}; }

TailSpec TailSpec::slow_log(double c, double p) {
  TailSpec s{TailFamily::SlowLog, 0.0, c, p, false};
  s.validate();
  return s;
}

TailSpec TailSpec::gaussian(double p) { return {TailFamily::Gaussian, 0.0, p, p, false}; }

void TailSpec::validate() const {
  if (family == TailFamily::ParetoLog && !(alpha > 0.0 && std::isfinite(alpha)))
    throw std::invalid_argument("TailSpec: pareto_log requires alpha > 0");
  if (!(c >= 0.0 && c <= 1.0)) throw std::invalid_argument("TailSpec: c must lie in [0,1]");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("TailSpec: p must lie in [0,1]");
}

double TailSpec::tail_index() const {
  switch (family) {
    case TailFamily::ParetoLog: return alpha;
    case TailFamily::FigOneB: return 2.0;
    case TailFamily::SlowLog: return 0.0;
    case TailFamily::Gaussian: break;
  }
  throw std::domain_error("TailSpec: gaussian family has no tail index");
}

// Largest f <= 1/2 for which sign probability c on {U < f} and some
// q in [0,1] on {U >= f} give P[positive] = p.
double TailSpec::tail_fraction() const {
  if (family == TailFamily::Gaussian) return 0.0;
  double f = 0.5;
  if (c > 0.0) f = std::min(f, p / c);
  if (c < 1.0) f = std::min(f, (1.0 - p) / (1.0 - c));
  return f;
}

double TailSpec::bulk_sign_probability() const {
  const double f = tail_fraction();
  if (f <= 0.0) return p;
  return std::clamp((p - f * c) / (1.0 - f), 0.0, 1.0);
}

double tail_function(const TailSpec& spec, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("tail_function: t must be finite");
  switch (spec.family) {
    case TailFamily::ParetoLog:
      return t < 1.0 ? 1.0 : std::pow(t, -spec.alpha);
    case TailFamily::FigOneB:
      return t < 1.0 ? 1.0 : 1.0 / (t * t);
    case TailFamily::SlowLog:
      return t < std::numbers::e ? 1.0 : 1.0 / std::log(t);
    case TailFamily::Gaussian:
      break;
  }
  throw std::domain_error("tail_function: unsupported for the gaussian family");
}

double log_modulus_at_level(const TailSpec& spec, double level) {
  if (!(level > 0.0 && level <= 1.0))
    throw std::invalid_argument("log_modulus_at_level: level must lie in (0,1]");
  switch (spec.family) {
    case TailFamily::ParetoLog:
      return std::pow(level, -1.0 / spec.alpha);
    case TailFamily::FigOneB:
      return 1.0 / std::sqrt(level);
    case TailFamily::SlowLog: {
      const double lm = std::exp(1.0 / level);
      if (!std::isfinite(lm))
        throw std::range_error("slow_log draw exceeds the log-domain range; sample tail levels instead");
      return lm;
    }
    case TailFamily::Gaussian:
      break;
  }
  throw std::domain_error("log_modulus_at_level: unsupported for the gaussian family");
}

double draw_phase(const TailSpec& spec, double level, Rng& rng) {
  if (spec.complex_coeffs) return wrap_phase(std::numbers::pi * (1.0 - 2.0 * rng.uniform_open()));
  const double prob = level < spec.tail_fraction() ? spec.c : spec.bulk_sign_probability();
  return rng.bernoulli(prob) ? 0.0 : std::numbers::pi;
}

LogComplex sample_coefficient(const TailSpec& spec, Rng& rng) {
  if (spec.family == TailFamily::Gaussian) {
    double x = 0.0;
    while (x == 0.0) x = rng.normal();
    const double lm = std::log(std::abs(x));
    if (spec.complex_coeffs) return {lm, draw_phase(spec, 1.0, rng)};
    // Sign of a symmetric normal is independent of |x|; resample it with p.
    return {lm, rng.bernoulli(spec.p) ? 0.0 : std::numbers::pi};
  }
  const double level = rng.uniform_open();
  const double lm = log_modulus_at_level(spec, level);
  return {lm, draw_phase(spec, level, rng)};
}

std::vector<LogComplex> sample_polynomial(const TailSpec& spec, std::size_t degree, Rng& rng) {
  if (degree < 1) throw std::invalid_argument("sample_polynomial: degree must be >= 1");
  std::vector<LogComplex> coeffs;
  coeffs.reserve(degree + 1);
  for (std::size_t k = 0; k <= degree; ++k) coeffs.push_back(sample_coefficient(spec, rng));
  return coeffs;
}

NormalizingPair normalizing_sequences(const TailSpec& spec, std::size_t n) {
  if (n < 1) throw std::invalid_argument("normalizing_sequences: n must be >= 1");
  if (!spec.has_tail_index())
    throw std::domain_error("normalizing_sequences: family has no tail index");
  const double a = std::pow(static_cast<double>(n), 1.0 / spec.tail_index());
  return {a, static_cast<double>(n) / a};
}

}  // namespace logroots
