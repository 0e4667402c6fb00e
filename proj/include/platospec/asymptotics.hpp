#pragma once

#include <string>
#include <vector>

#include "platospec/oracles.hpp"
#include "platospec/rootfind.hpp"

namespace platospec {

enum class CenterFamily { NPi, TwoNPi, PiPlus2NPi, HalfPiPlusNPi, Fixed };

/// Lattice of limit points. Fixed(c, period) is {+-c + n period}.
struct Lattice {
  CenterFamily family = CenterFamily::NPi;
  double center = 0.0;
  double period = 0.0;

  static Lattice n_pi() { return {CenterFamily::NPi, 0.0, 0.0}; }
  static Lattice two_n_pi() { return {CenterFamily::TwoNPi, 0.0, 0.0}; }
  static Lattice pi_plus_two_n_pi() { return {CenterFamily::PiPlus2NPi, 0.0, 0.0}; }
  static Lattice half_pi_plus_n_pi() { return {CenterFamily::HalfPiPlusNPi, 0.0, 0.0}; }
  /// Throws std::invalid_argument unless period > 0.
  static Lattice fixed(double center, double period);

  /// Distance from k to the nearest lattice point.
  double distance(double k) const;
  std::string label() const;
};

enum class EnvelopeKind { Exact, InverseK, InverseK2 };

/// Exact: dist <= constant. InverseK: k dist <= constant + slack. InverseK2: k^2 dist <= constant + slack.
struct Envelope {
  EnvelopeKind kind = EnvelopeKind::InverseK;
  double constant = 0.0;
  double slack = 0.0;

  double scaled(double k, double dist) const;
  double bound() const { return constant + slack; }
};

struct ClusterTarget {
  std::string name;
  Lattice lattice;
  Envelope envelope;
  /// 0 means any multiplicity is allowed.
  int required_multiplicity = 0;
};

/// Envelope slack for C/k and C/k^2 bounds.
inline constexpr double kSlackInverseK = 0.5;
inline constexpr double kSlackInverseK2 = 2.0;
/// Absolute distance accepted for the exactly known octahedron families.
inline constexpr double kExactTolerance = 1e-8;

/// PO envelope constant for the nπ clusters: 2 sqrt 3 (tetrahedron, cube),
/// 5.51 (dodecahedron), 10.84 (icosahedron), sqrt 10 (octahedron π + 2πn family).
double theorem_constant(Solid solid);

/// Classes every PO eigenvalue must fall into at high k.
std::vector<ClusterTarget> theorem_targets(Solid solid);

struct TargetResult {
  ClusterTarget target;
  int count = 0;
  int total_multiplicity = 0;
  double max_scaled_dist = 0.0;
  double worst_k = 0.0;
  std::vector<double> offenders;
  bool pass = true;
};

struct AsymptoticReport {
  Solid solid = Solid::Tetrahedron;
  double k_lo = 0.0;
  double k_hi = 0.0;
  int eigenvalue_count = 0;
  int total_multiplicity = 0;
  bool spectrum_converged = true;
  std::vector<TargetResult> targets;
  /// |k sin k| <= C + slack at every eigenvalue (dodecahedron, icosahedron only).
  std::vector<TargetResult> restatements;
  std::vector<double> unassigned;
  std::vector<double> ambiguous;

  bool pass() const;
};

/// Assigns each eigenvalue of `spectrum` in [k_lo, k_hi] to exactly one target.
AsymptoticReport classify(Solid solid, const Spectrum& spectrum, double k_lo, double k_hi);

/// Computes the PO spectrum on [k_lo, k_hi] and classifies it. `base` supplies
/// the scan options; its window is replaced.
AsymptoticReport check_theorem(Solid solid, double k_lo, double k_hi, const RootfindOptions& base = {});

struct DriftReport {
  Solid solid = Solid::Tetrahedron;
  double alpha = 0.0;
  double k_lo = 0.0;
  double k_hi = 0.0;
  int paired = 0;
  double max_scaled_drift = 0.0;  // max k |k_alpha - k_0|
  double worst_k = 0.0;
  std::vector<double> unpaired;
  bool converged = true;

  bool pass() const { return unpaired.empty() && converged; }
};

/// Largest distance at which a delta eigenvalue still counts as paired.
inline constexpr double kPairingRadius = 3.14159265358979323846 / 4.0;

/// Pairs each eigenvalue of `delta` in [k_lo, k_hi] with the nearest entry of `kirchhoff`.
DriftReport drift_from_spectra(Solid solid, double alpha, const Spectrum& delta, const Spectrum& kirchhoff,
                               double k_lo, double k_hi);

/// Runs both solvers; the Kirchhoff window is widened by the pairing radius.
DriftReport kirchhoff_drift(Solid solid, double alpha, double k_lo, double k_hi, const RootfindOptions& base = {});

struct DriftComparison {
  DriftReport first;
  DriftReport second;
  double ratio = 0.0;  // second.max / first.max
  double max_ratio = 1.5;
  bool pass() const { return first.pass() && second.pass() && ratio <= max_ratio; }
};

DriftComparison compare_drift(Solid solid, double alpha, double lo1, double hi1, double lo2, double hi2,
                              const RootfindOptions& base = {});

/// Limit points of the eigenvalue families. For Delta these are the exact
/// Kirchhoff (alpha = 0) positions approached for any alpha.
std::vector<Lattice> fixed_point_targets(Solid solid, OracleCoupling coupling);

/// Fujiwara root bound of y^3 + a2 y^2 + a1 y + a0 and its refinement by
/// iterating a -> cbrt(|a2| a^2 + |a1| a + |a0|) to the fixed point.
struct FujiwaraBound {
  double initial = 0.0;
  double refined = 0.0;
  /// sqrt(refined): bound on |k sin k| when y = k^2 sin^2 k.
  double k_sin_k = 0.0;
  int iterations = 0;
};
FujiwaraBound fujiwara_bound(double a2, double a1, double a0);

}  // namespace platospec
