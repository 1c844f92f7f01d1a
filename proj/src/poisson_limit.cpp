#include "logroots/poisson_limit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace logroots {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && std::isfinite(alpha)))
    throw std::invalid_argument("poisson_limit: alpha must be positive");
}

// Part of a segment where the majorant lies below v_min, described by the
// ascending range of majorant heights [y_a, y_b] it covers.
struct LowPart {
  bool empty = true;
  bool flat = false;
  double y_a = 0.0, y_b = 0.0;
  double width = 0.0;  // flat parts only
};

LowPart low_part(const Majorant& m, const Segment& s, double v_min) {
  LowPart part;
  const double y_lo = m.vertices[s.lo_vertex].y;
  const double y_hi = m.vertices[s.hi_vertex].y;
  if (s.R == 0.0) {
    if (y_lo < v_min) {
      part.empty = false;
      part.flat = true;
      part.y_a = part.y_b = y_lo;
      part.width = s.width();
    }
    return part;
  }
  const double lo = std::min(y_lo, y_hi);
  const double hi = std::min(std::max(y_lo, y_hi), v_min);
  if (lo >= v_min || hi <= lo) return part;
  part.empty = false;
  part.y_a = lo;
  part.y_b = hi;
  return part;
}

// Integral of y(x)^-alpha over the low part of the segment.
double proposal_mass(const Segment& s, const LowPart& part, double alpha) {
  if (part.flat) return part.y_a > 0.0 ? std::pow(part.y_a, -alpha) * part.width : kInf;
  return (std::pow(part.y_b, 1.0 - alpha) - std::pow(part.y_a, 1.0 - alpha)) /
         (std::abs(s.R) * (1.0 - alpha));
}

double low_part_length(const Segment& s, const LowPart& part) {
  return part.flat ? part.width : (part.y_b - part.y_a) / std::abs(s.R);
}

Majorant pinned_hull(const PointProcessSample& sample) {
  return least_concave_majorant(sample.atoms, 1.0, true);
}

}  // namespace

void PointProcessSample::validate() const {
  require_alpha(alpha);
  if (!(v_min >= 0.0)) throw std::invalid_argument("PointProcessSample: v_min must be >= 0");
  for (const auto& a : atoms) {
    if (a.x < 0.0 || a.x > 1.0 || !(a.y > 0.0))
      throw std::invalid_argument("PointProcessSample: atom outside [0,1] x (0, inf)");
    if (a.y < v_min) throw std::invalid_argument("PointProcessSample: atom below v_min");
  }
  if (marks && marks->size() != atoms.size())
    throw std::invalid_argument("PointProcessSample: marks and atoms differ in length");
}

double LimitMeasure::total_weight() const {
  double w = 0.0;
  for (const auto& c : components) w += c.weight;
  return w;
}

double RealRootAtom::value() const { return sign * std::exp(log_radius); }

PointProcessSample sample_rho(double alpha, double v_min, Rng& rng) {
  require_alpha(alpha);
  if (!(v_min > 0.0)) throw std::invalid_argument("sample_rho: v_min must be positive");
  PointProcessSample sample;
  sample.alpha = alpha;
  sample.v_min = v_min;
  const std::uint64_t count = rng.poisson(std::pow(v_min, -alpha));
  sample.atoms.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const double u = rng.uniform_open();
    const double v = v_min * std::pow(rng.uniform_open(), -1.0 / alpha);
    sample.atoms.push_back({u, v});
  }
  return sample;
}

void extend_band(PointProcessSample& sample, double v_lo, Rng& rng) {
  if (!(v_lo > 0.0 && v_lo < sample.v_min))
    throw std::invalid_argument("extend_band: v_lo must lie in (0, v_min)");
  const double alpha = sample.alpha;
  const double w_lo = std::pow(sample.v_min, -alpha);  // w = v^-alpha is unit-rate
  const double w_hi = std::pow(v_lo, -alpha);
  const std::uint64_t count = rng.poisson(w_hi - w_lo);
  for (std::uint64_t i = 0; i < count; ++i) {
    const double u = rng.uniform_open();
    const double w = rng.uniform(w_lo, w_hi);
    sample.atoms.push_back({u, std::max(std::pow(w, -1.0 / alpha), v_lo)});
  }
  sample.v_min = v_lo;
  if (sample.marks) sample.marks.reset();
}

void attach_marks(PointProcessSample& sample, double c, Rng& rng) {
  std::vector<Mark> marks;
  marks.reserve(sample.atoms.size());
  for (std::size_t i = 0; i < sample.atoms.size(); ++i) {
    const int sigma = rng.sign(c);
    const int pi = rng.sign(0.5);
    marks.push_back({sigma, pi});
  }
  sample.marks = std::move(marks);
}

double miss_mass(const Majorant& m, double alpha, double v_min) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("miss_mass: alpha must lie in (0,1); use the windowed majorant");
  if (!(v_min > 0.0)) return 0.0;
  const double w_min = std::pow(v_min, -alpha);
  double total = 0.0;
  for (const auto& s : m.segments) {
    const LowPart part = low_part(m, s, v_min);
    if (part.empty) continue;
    const double mass = proposal_mass(s, part, alpha) - w_min * low_part_length(s, part);
    total += std::max(mass, 0.0);
  }
  return total;
}

MajorantSample sample_majorant(double alpha, Rng& rng, double miss_tol) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("sample_majorant: alpha must lie in (0,1)");
  if (!(miss_tol > 0.0 && miss_tol <= 0.01))
    throw std::invalid_argument("sample_majorant: miss_tol must lie in (0, 0.01]");

  MajorantSample out;
  out.process = sample_rho(alpha, 1.0, rng);
  // The process has infinitely many atoms; the hull needs at least one.
  while (out.process.atoms.empty()) extend_band(out.process, 0.5 * out.process.v_min, rng);

  Majorant hull = pinned_hull(out.process);
  double certificate = miss_mass(hull, alpha, out.process.v_min);
  if (certificate > miss_tol) {
    // Poisson atoms restricted to {hull(u) < v < v_min}: thinning of proposals
    // with intensity du dw on {0 < w < hull(u)^-alpha}, w = v^-alpha.
    const double v_min = out.process.v_min;
    const double w_min = std::pow(v_min, -alpha);
    const double inv_alpha = 1.0 / alpha;
    const double beta = 1.0 - alpha;
    for (const auto& s : hull.segments) {
      const LowPart part = low_part(hull, s, v_min);
      if (part.empty) continue;
      const double y_lo = hull.vertices[s.lo_vertex].y;
      const std::uint64_t proposals = rng.poisson(proposal_mass(s, part, alpha));
      const double pa = std::pow(part.y_a, beta), pb = std::pow(part.y_b, beta);
      for (std::uint64_t i = 0; i < proposals; ++i) {
        double x, y;
        if (part.flat) {
          x = rng.uniform(s.x_lo, s.x_hi);
          y = part.y_a;
        } else {
          y = std::pow(pa + rng.uniform_open() * (pb - pa), 1.0 / beta);
          x = std::clamp(s.x_lo + (y_lo - y) / s.R, s.x_lo, s.x_hi);
        }
        const double w = rng.uniform_open() * std::pow(y, -alpha);
        if (w <= w_min) continue;
        out.process.atoms.push_back({x, std::pow(w, -inv_alpha)});
      }
    }
    // Everything above the old hull is now sampled; the new hull dominates it.
    out.process.v_min = 0.0;
    hull = pinned_hull(out.process);
    certificate = 0.0;
  }
  out.majorant = std::move(hull);
  out.segment_count = out.majorant.segment_count();
  out.miss_certificate = certificate;
  return out;
}

WindowedSample windowed_majorant(double alpha, double kappa, Rng& rng) {
  require_alpha(alpha);
  if (!(kappa > 0.0 && kappa < 0.5))
    throw std::invalid_argument("windowed_majorant: kappa must lie in (0, 1/2)");
  constexpr double kMaxExpectedAtoms = 2e7;
  constexpr double kBoundarySliver = 1e-4;
  PointProcessSample sample = sample_rho(alpha, 1.0, rng);
  std::size_t atom_count = sample.atoms.size();
  for (;;) {
    if (!sample.atoms.empty()) {
      const Majorant hull = pinned_hull(sample);
      const std::size_t nv = hull.vertices.size();
      const auto [first, last] = window_segments(hull, kappa, WindowMode::Window);
      // Near a pinned endpoint new vertices keep appearing as v_min drops (very
      // slowly for alpha = 1). They can only bend the boundary segment where it
      // lies below 2 v_min, so a thin enough sliver is accepted.
      auto settled = [&](std::size_t k) {
        if (k == 0 || k + 1 == nv) {
          const double slope = std::abs(hull.segments[k == 0 ? 0 : nv - 2].R);
          return 2.0 * sample.v_min <= kBoundarySliver * kappa * slope;
        }
        return hull.vertices[k].y >= 2.0 * sample.v_min;
      };
      bool ok = first < last;
      for (std::size_t k = first; ok && k <= last; ++k) ok = settled(k);
      if (ok) {
        WindowedSample out;
        out.window.vertices.assign(hull.vertices.begin() + first, hull.vertices.begin() + last + 1);
        for (std::size_t i = first; i < last; ++i) {
          Segment s = hull.segments[i];
          s.lo_vertex -= first;
          s.hi_vertex -= first;
          out.window.segments.push_back(s);
        }
        out.window.x_min = out.window.vertices.front().x;
        out.window.x_max = out.window.vertices.back().x;
        out.v_min = sample.v_min;
        out.atom_count = atom_count;
        return out;
      }
      // atoms under the hull stay under every later hull
      std::erase_if(sample.atoms,
                    [&](const PlanarPoint& a) { return a.y < evaluate(hull, a.x) * (1.0 - 1e-9); });
    }
    if (std::pow(0.5 * sample.v_min, -alpha) > kMaxExpectedAtoms)
      throw std::runtime_error("windowed_majorant: window not settled within the atom budget");
    const std::size_t before = sample.atoms.size();
    extend_band(sample, 0.5 * sample.v_min, rng);
    atom_count += sample.atoms.size() - before;
  }
}

LimitMeasure limit_measure(const Majorant& m) {
  LimitMeasure out;
  out.components.reserve(m.segments.size());
  for (const auto& s : m.segments) out.components.push_back({s.width(), s.R});
  return out;
}

std::vector<RealRootAtom> real_root_atoms(const Majorant& m, const std::vector<Mark>& marks) {
  if (marks.size() != m.vertices.size())
    throw std::invalid_argument("real_root_atoms: one mark per vertex required");
  std::vector<RealRootAtom> atoms;
  for (std::size_t k = 0; k < m.segments.size(); ++k) {
    const Mark& a = marks[k];
    const Mark& b = marks[k + 1];
    const double r = m.segments[k].R;
    if (a.sigma != b.sigma) atoms.push_back({+1, r, k});
    if (a.sigma * a.pi != b.sigma * b.pi) atoms.push_back({-1, r, k});
  }
  return atoms;
}

RealRootLimit real_root_limit(const Majorant& m, double c, double p, Parity parity, Rng& rng) {
  if (!m.is_pinned() || m.segments.empty())
    throw std::invalid_argument("real_root_limit: requires a pinned majorant");
  if (!(c >= 0.0 && c <= 1.0 && p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("real_root_limit: c and p must lie in [0,1]");
  const std::size_t nv = m.vertices.size();
  RealRootLimit out;
  out.vertex_marks.resize(nv);
  for (std::size_t k = 0; k < nv; ++k) {
    const bool boundary = k == 0 || k + 1 == nv;
    out.vertex_marks[k].sigma = rng.sign(boundary ? p : c);
    out.vertex_marks[k].pi = boundary ? 1 : rng.sign(0.5);
  }
  if (parity == Parity::Odd) out.vertex_marks.back().pi = -1;
  out.atoms = real_root_atoms(m, out.vertex_marks);
  return out;
}

}  // namespace logroots
