#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "platospec/secular.hpp"

namespace platospec {

struct RootfindOptions {
  double k_min = 0.05;
  double k_max = 4.0 * 3.14159265358979323846;
  double scan_step = 0.005;
  double tol_accept = 1e-8;
  double promote_tol = 1e-3;
  double merge_tol = 1e-7;
  int max_refine_iters = 200;
  /// Golden-section search stops once the bracket is this narrow.
  double refine_width = 1e-12;
  /// When the singular value just above the counted ones is below this after
  /// refinement, the neighbourhood is rescanned at scan_step/16 to split clusters.
  double split_tol = 1e-2;
  /// 0 means std::thread::hardware_concurrency(); PLATOSPEC_THREADS caps it.
  int threads = 0;

  /// Throws std::invalid_argument on non-positive steps, empty windows or k_min <= 0.
  void validate() const;
};

struct Eigenvalue {
  double k = 0.0;
  int multiplicity = 0;
  double residual = 0.0;
  /// Final golden-section bracket; k_lo < k < k_hi.
  double k_lo = 0.0;
  double k_hi = 0.0;
  /// Set when a near-degenerate partner could not be separated.
  bool cluster = false;
  /// Symmetry sector for oracle spectra, -1 otherwise.
  int sector = -1;
};

struct Rejection {
  enum class Reason { Spurious, NotConverged };
  double k = 0.0;
  double sigma = 0.0;
  Reason reason = Reason::Spurious;
};

struct Spectrum {
  double k_min = 0.0;
  double k_max = 0.0;
  double scan_step = 0.0;
  /// Number of golden-section refinements run.
  int refinements = 0;
  std::vector<Eigenvalue> eigenvalues;  // sorted by k
  std::vector<Rejection> rejected;

  int total_multiplicity() const;
  /// True unless some minimum stalled between tol_accept and promote_tol.
  bool converged() const;
  /// Eigenvalues with k in [lo, hi].
  std::vector<Eigenvalue> in_window(double lo, double hi) const;
};

/// Singular-value probe of a k-dependent matrix family; must be thread-safe.
using Detector = std::function<SigmaReport(double)>;

struct GoldenResult {
  double x = 0.0;
  double fx = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  int iterations = 0;
  bool converged = false;
};

GoldenResult golden_section_minimize(const std::function<double(double)>& f, double a, double b, double width,
                                     int max_iters);

struct RefineResult {
  enum class Status { Accepted, Spurious, NotConverged };
  Status status = Status::Spurious;
  std::optional<Eigenvalue> eigenvalue;
  double k = 0.0;
  double sigma = 0.0;
  double next_sigma = 0.0;
};

/// Golden-section refinement of sigma_min on [k_lo, k_hi], which should hold
/// one interior local minimum.
RefineResult refine_root(const Detector& detector, double k_lo, double k_hi, const RootfindOptions& opts);
RefineResult refine_root(const SecularSystem& system, double k_lo, double k_hi, const RootfindOptions& opts);

Spectrum scan_detector(const Detector& detector, const RootfindOptions& opts);
Spectrum scan_spectrum(const SecularSystem& system, const RootfindOptions& opts);

/// Zeros of a scalar function: local minima of |f| that drop below
/// rel_tol * max(|f(k +- probe)|). Multiplicity is the estimated order of the zero.
struct ScalarRootOptions {
  double probe = 1e-4;
  double rel_tol = 1e-6;
};
Spectrum scan_scalar_zeros(const std::function<Complex(double)>& f, const RootfindOptions& opts,
                           const ScalarRootOptions& scalar = {});

/// Sorts, then merges entries closer than merge_tol. Entries of the same sector
/// (or both unsectored) describe the same eigenspace and keep the larger count;
/// entries from different sectors add up.
void merge_spectrum(Spectrum& spectrum, double merge_tol);

/// Null-space basis of M(k) at an eigenvalue: one vector of (a_e, b_e) per
/// basis element. Throws std::runtime_error if the null-space dimension found
/// at ev.k differs from ev.multiplicity or the residual exceeds 1e-7.
struct NullSpace {
  double k = 0.0;
  std::vector<Eigen::VectorXcd> basis;  // each of length 2N, unit norm
  double residual = 0.0;
};
NullSpace eigenfunction_coefficients(const SecularSystem& system, const Eigenvalue& ev);

/// Evaluates the eigenfunction with coefficients `coeffs` on edge e at x in [0, 1].
Complex evaluate_edge(const Eigen::VectorXcd& coeffs, int edge, double k, double x);

/// Worker count after applying PLATOSPEC_THREADS.
int effective_threads(int requested);

}  // namespace platospec
