#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "logroots/majorant.hpp"
#include "logroots/rng.hpp"

namespace logroots {

/// Sign and parity marks attached to an atom or vertex.
struct Mark {
  int sigma = 1;
  int pi = 1;
  bool operator==(const Mark&) const = default;
};

/// Atoms (U, V) of the Poisson process with intensity alpha v^-(alpha+1) du dv
/// on [0,1] x (0, inf), restricted to V >= v_min.
struct PointProcessSample {
  double alpha = 1.0;
  double v_min = 1.0;
  std::vector<PlanarPoint> atoms;  ///< x = U, y = V
  std::optional<std::vector<Mark>> marks;

  void validate() const;
  bool operator==(const PointProcessSample&) const = default;
};

struct LimitComponent {
  double weight;      ///< segment width, the fraction of roots on the circle
  double log_radius;  ///< R, the circle has radius exp(R)
};

struct LimitMeasure {
  std::vector<LimitComponent> components;
  double total_weight() const;
};

enum class Parity { Even, Odd };

struct RealRootAtom {
  int sign;           ///< +1 for exp(R), -1 for -exp(R)
  double log_radius;  ///< R
  std::size_t segment;
  double value() const;
};

struct RealRootLimit {
  std::vector<RealRootAtom> atoms;
  std::vector<Mark> vertex_marks;  ///< marks drawn at the majorant vertices
};

/// Atom count is Poisson(v_min^-alpha); U uniform, V = v_min * U'^(-1/alpha).
PointProcessSample sample_rho(double alpha, double v_min, Rng& rng);

/// Appends the atoms with V in [v_lo, v_hi) to `sample` and lowers v_min to v_lo.
void extend_band(PointProcessSample& sample, double v_lo, Rng& rng);

/// Draws sigma ~ P[+1] = c and pi ~ P[+1] = 1/2 for every atom.
void attach_marks(PointProcessSample& sample, double c, Rng& rng);

/// Expected number of atoms with V < v_min lying above the pinned majorant `m`
/// on [0,1]; closed form per segment. Requires alpha in (0,1).
double miss_mass(const Majorant& m, double alpha, double v_min);

struct MajorantSample {
  PointProcessSample process;
  Majorant majorant;
  std::size_t segment_count = 0;
  /// Expected number of unsampled atoms above the returned majorant.
  double miss_certificate = 0.0;
};

/// Pinned majorant of the Poisson process for alpha in (0,1).
///
/// Atoms are drawn above v_min = 1 (lowering v_min band by band until at least
/// one atom exists). While miss_mass exceeds miss_tol, the Poisson atoms of
/// the unexplored region {majorant(u) < v < v_min} are drawn exactly; every atom
/// that can lie above the final majorant is then known, so the certificate
/// drops to zero.
MajorantSample sample_majorant(double alpha, Rng& rng, double miss_tol = 1e-6);

struct WindowedSample {
  Majorant window;  ///< segments meeting [kappa, 1-kappa]
  double v_min = 1.0;
  std::size_t atom_count = 0;
};

/// Windowed majorant for alpha >= 1, where the full majorant has infinitely
/// many segments. v_min is halved until every vertex bounding a window segment
/// is a sampled atom with V >= 2 v_min, or a pinned endpoint whose segment lies
/// below 2 v_min only on a width of at most 1e-4 kappa.
WindowedSample windowed_majorant(double alpha, double kappa, Rng& rng);

/// One component (width, R) per segment.
LimitMeasure limit_measure(const Majorant& m);

/// Real-root limit process: sign/parity marks on the vertices of a pinned
/// majorant with the boundary conventions of the finite-degree polynomial.
RealRootLimit real_root_limit(const Majorant& m, double c, double p, Parity parity, Rng& rng);

/// Deterministic core of real_root_limit for given vertex marks.
std::vector<RealRootAtom> real_root_atoms(const Majorant& m, const std::vector<Mark>& marks);

}  // namespace logroots
