#include "logroots/limit_formulas.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace logroots {

namespace {

constexpr double kGamma = std::numbers::egamma;

void require_open_unit(double alpha, const char* who) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error(std::string(who) + ": alpha must lie in (0,1)");
}

// Neumaier compensated sum.
struct Accumulator {
  double sum = 0.0, comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

// Gauss-Kronrod 7/15.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

using Fn = std::function<double(double)>;

void gk15(const Fn& f, double a, double b, double& kronrod, double& error) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double k = kWgk[7] * fc, g = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double s = f(c - h * kXgk[j]) + f(c + h * kXgk[j]);
    k += kWgk[j] * s;
    if (j % 2 == 1) g += kWg[j / 2] * s;
  }
  kronrod = k * h;
  error = std::abs((k - g) * h);
}

// Globally adaptive: bisect the interval with the largest error estimate.
double integrate(const Fn& f, double a, double b, double tol) {
  struct Piece {
    double a, b, value, error;
    bool operator<(const Piece& o) const { return error < o.error; }
  };
  std::priority_queue<Piece> queue;
  double total_error = 0.0;
  auto push = [&](double lo, double hi) {
    Piece p{lo, hi, 0.0, 0.0};
    gk15(f, lo, hi, p.value, p.error);
    total_error += p.error;
    queue.push(p);
  };
  // Geometric initial pieces suit the exponentially decaying integrands here.
  for (double lo = a, hi = std::min(b, a + 1.0); lo < b; lo = hi, hi = std::min(b, 2.0 * hi + 1.0))
    push(lo, hi);
  for (int it = 0; total_error > tol; ++it) {
    if (it >= 20000) throw std::runtime_error("quadrature: subdivision limit reached");
    const Piece worst = queue.top();
    queue.pop();
    total_error -= worst.error;
    const double m = 0.5 * (worst.a + worst.b);
    push(worst.a, m);
    push(m, worst.b);
  }
  Accumulator acc;
  for (; !queue.empty(); queue.pop()) acc.add(queue.top().value);
  return acc.value();
}

// Integrand of E L_alpha in t = -log u, divided by a = 1 - 2 alpha:
//   [(1 - e^{-at})/a - e^{alpha t}(1 - e^{-t})] e^{-t} / [(1 - e^{-t})(1 - e^{-(1-alpha)t})^2].
// The numerator vanishes to third order at t = 0, so small t uses its series.
double el_integrand(double alpha, double t) {
  if (t <= 0.0) return el_integrand(alpha, 1e-300);
  const double a = 1.0 - 2.0 * alpha;
  double num;
  if (t < 0.5) {
    Accumulator acc;
    double tk = t, ak = 1.0, al = alpha, bl = alpha - 1.0, fact = 1.0;
    for (int k = 1; k <= 30; ++k) {
      fact *= k;
      const double sign = k % 2 == 1 ? 1.0 : -1.0;
      acc.add((sign * ak - (al - bl)) * tk / fact);
      tk *= t;
      ak *= a;
      al *= alpha;
      bl *= alpha - 1.0;
    }
    num = acc.value();
    num *= std::exp(-t);
  } else {
    // e^{-t} (1 - e^{-at}) / a, kept finite for large t
    double first;
    if (a == 0.0) first = t * std::exp(-t);
    else if (std::abs(a * t) < 1.0) first = -std::expm1(-a * t) / a * std::exp(-t);
    else first = (std::exp(-t) - std::exp(-(2.0 - 2.0 * alpha) * t)) / a;
    num = first + std::exp((alpha - 1.0) * t) * std::expm1(-t);
  }
  const double d1 = -std::expm1(-t);
  const double d2 = -std::expm1(-(1.0 - alpha) * t);
  return num / (d1 * d2 * d2);
}

// alpha = 1/2 branch: [u^{-1/2}(1-u) + ln u] / [(1-u)(1-u^{1/2})^2] in t.
double el_integrand_half(double t) {
  if (t <= 0.0) return el_integrand_half(1e-300);
  double num;
  if (t < 0.5) {
    Accumulator acc;
    double term = t * t * t / 24.0;  // 2 (t/2)^3 / 3!
    for (int k = 3; k <= 31; k += 2) {
      acc.add(term);
      term *= t * t / (4.0 * (k + 1) * (k + 2));
    }
    num = acc.value();
  } else {
    num = 2.0 * std::sinh(0.5 * t) - t;
  }
  const double d1 = -std::expm1(-t);
  const double d2 = -std::expm1(-0.5 * t);
  return num * std::exp(-t) / (d1 * d2 * d2);
}

double closed_form(double alpha) {
  const double beta = 1.0 - alpha;
  return 2.0 + (2.0 - 2.0 * alpha) / (2.0 * alpha - 1.0) *
                   (1.0 - 2.0 * barnes_C(beta) + (std::log(beta) - alpha * kGamma) / beta);
}

}  // namespace

double digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("digamma: x must be positive");
  double shift = 0.0;
  while (x < 8.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double r = 1.0 / (x * x);
  // Bernoulli terms B_{2k} / (2k x^{2k}), k = 1..8
  const double series =
      r * (1.0 / 12 - r * (1.0 / 120 - r * (1.0 / 252 - r * (1.0 / 240 - r * (1.0 / 132 -
      r * (691.0 / 32760 - r * (1.0 / 12 - r * 3617.0 / 8160)))))));
  return shift + std::log(x) - 0.5 / x - series;
}

double barnes_C(double beta, double tol) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw std::domain_error("barnes_C: beta must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("barnes_C: tol must be positive");
  constexpr std::size_t kMaxTerms = 100000000;
  constexpr int kMaxOrder = 8;
  // The expansion is in powers of 1/(n beta); start where it is already useful.
  std::size_t start = 16;
  while (static_cast<double>(start) * beta < 16.0 && start < kMaxTerms / 2) start *= 2;

  Accumulator psi_sum;
  double psi_abs = 0.0;
  std::size_t m = 0;
  std::vector<std::vector<double>> table;
  for (std::size_t n = start; n <= kMaxTerms; n *= 2) {
    while (m < n) {
      ++m;
      const double v = digamma(static_cast<double>(m) * beta);
      psi_sum.add(v);
      psi_abs += std::abs(v);
    }
    const double nd = static_cast<double>(n);
    const double tail = (nd + 0.5 - 0.5 / beta) * std::log(nd * beta);
    Accumulator s = psi_sum;
    s.add(-tail);
    s.add(nd);
    std::vector<double> row{s.value()};
    if (!table.empty()) {
      const auto& prev = table.back();
      double factor = 1.0;
      for (std::size_t j = 1; j <= prev.size() && j <= kMaxOrder; ++j) {
        factor *= 2.0;
        row.push_back(row[j - 1] + (row[j - 1] - prev[j - 1]) / (factor - 1.0));
      }
      // Below this the differences are rounding noise (digamma errors accumulate).
      const double floor = 1e-16 * (psi_abs + std::abs(tail) + nd) * 8.0;
      const double diff = std::abs(row.back() - prev.back());
      if (row.size() >= 4 && diff < std::max(tol, floor)) return row.back();
    }
    table.push_back(std::move(row));
  }
  throw std::runtime_error("barnes_C: no convergence within 1e8 terms");
}

double expected_segments_closed(double alpha) {
  require_open_unit(alpha, "expected_segments_closed");
  const double d = alpha - 0.5;
  if (std::abs(d) >= 5e-4) return closed_form(alpha);
  // Continuity at alpha = 1/2: Taylor expansion whose coefficients come from
  // symmetric evaluations at 1/2 +- h with Richardson extrapolation in h.
  const std::array<double, 3> hs = {0.01, 0.005, 0.0025};
  std::array<double, 3> mean{}, slope{};
  for (int i = 0; i < 3; ++i) {
    const double up = closed_form(0.5 + hs[i]), down = closed_form(0.5 - hs[i]);
    mean[i] = 0.5 * (up + down);
    slope[i] = (up - down) / (2.0 * hs[i]);
  }
  auto extrapolate = [](const std::array<double, 3>& v) {
    const double r1 = (4.0 * v[1] - v[0]) / 3.0, r2 = (4.0 * v[2] - v[1]) / 3.0;
    return (16.0 * r2 - r1) / 15.0;
  };
  const double centre = extrapolate(mean);
  const double curvature = 2.0 * (mean[2] - centre) / (hs[2] * hs[2]);
  return centre + extrapolate(slope) * d + 0.5 * curvature * d * d;
}

double expected_segments_integral(double alpha, double tol) {
  require_open_unit(alpha, "expected_segments_integral");
  if (!(tol > 0.0)) throw std::invalid_argument("expected_segments_integral: tol must be positive");
  if (alpha == 0.5) {
    const double upper = 90.0;
    return 2.0 + integrate(el_integrand_half, 0.0, upper, tol);
  }
  // The integrand decays like e^{-(1-alpha) t}.
  const double upper = 45.0 / (1.0 - alpha);
  const double scale = 2.0 * (1.0 - alpha);
  const double integral =
      integrate([alpha](double t) { return el_integrand(alpha, t); }, 0.0, upper, tol / scale);
  return 2.0 - scale * integral;
}

double prob_two_segments(double alpha) {
  require_open_unit(alpha, "prob_two_segments");
  return 1.0 - alpha;
}

double expected_real_roots(double alpha, double c, double p) {
  if (!(c >= 0.0 && c <= 1.0 && p >= 0.0 && p <= 1.0))
    throw std::domain_error("expected_real_roots: c and p must lie in [0,1]");
  const double el = expected_segments_closed(alpha);
  return (2.0 * c * (1.0 - c) + 0.5) * (el - 2.0) + 2.0 * (p + c - 2.0 * p * c) + 1.0;
}

double Alpha0Distribution::mean() const {
  double m = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) m += support[i] * probs[i];
  return m;
}

Alpha0Distribution alpha0_real_distribution(double c, double p, Parity parity) {
  if (!(c >= 0.0 && c <= 1.0 && p >= 0.0 && p <= 1.0))
    throw std::domain_error("alpha0_real_distribution: c and p must lie in [0,1]");
  Alpha0Distribution d;
  d.parity = parity;
  if (parity == Parity::Even) {
    d.support = {0, 2, 4};
    d.probs = {0.5 * (c * p * p + (1 - c) * (1 - p) * (1 - p)), 0.5 + p * (1 - p),
               0.5 * (c * (1 - p) * (1 - p) + (1 - c) * p * p)};
  } else {
    d.support = {1, 3};
    d.probs = {1 - p - c + 2 * p * c, p + c - 2 * p * c};
  }
  return d;
}

}  // namespace logroots
