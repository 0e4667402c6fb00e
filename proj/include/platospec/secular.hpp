#pragma once

#include <vector>

#include "platospec/coupling.hpp"
#include "platospec/graph.hpp"

namespace platospec {

/// A graph with one coupling per vertex. The unknowns are the coefficients
/// (a_e, b_e) of f_e(x) = a_e cos(kx) + b_e sin(kx) on every edge, ordered
/// (a_0, b_0, a_1, b_1, ...).
class SecularSystem {
 public:
  /// Throws std::invalid_argument when a coupling's size differs from its vertex degree.
  SecularSystem(MetricGraph graph, std::vector<VertexCoupling> couplings);

  const MetricGraph& graph() const { return graph_; }
  const std::vector<VertexCoupling>& couplings() const { return couplings_; }
  int dimension() const { return 2 * graph_.edge_count(); }

 private:
  MetricGraph graph_;
  std::vector<VertexCoupling> couplings_;
  std::vector<CouplingRows> rows_;

  friend CMatrix assemble(const SecularSystem& system, double k);
};

/// Raw 2N x 2N secular matrix M(k). Throws std::invalid_argument for k <= 0.
CMatrix assemble(const SecularSystem& system, double k);

/// M(k) with every row scaled to unit max-norm.
CMatrix assemble_normalized(const SecularSystem& system, double k);

/// Scales each row of `m` in place to unit max-norm (zero rows are left alone).
void normalize_rows(CMatrix& m);

/// Default singular-value threshold used to count multiplicities: 1e-6 sqrt(dim).
double multiplicity_tolerance(int dimension);

struct SigmaReport {
  double sigma_min = 0.0;
  /// Number of singular values below the multiplicity tolerance.
  int near_zero_count = 0;
  /// Smallest singular value above the counted ones (infinity if none).
  double next_sigma = 0.0;
  Eigen::VectorXd singular_values;  // descending
};

/// Smallest singular values of the row-normalised M(k).
SigmaReport sigma_min(const SecularSystem& system, double k);
SigmaReport sigma_min(const SecularSystem& system, double k, double count_tol);

/// Singular values of a square or rectangular complex matrix, descending (LAPACK zgesvd).
Eigen::VectorXd singular_values(const CMatrix& m);

/// Full SVD; the columns of `v` are right singular vectors in the order of the returned values.
Eigen::VectorXd singular_values(const CMatrix& m, CMatrix& v);

/// Singular-value summary of an arbitrary matrix (no normalisation applied).
SigmaReport singular_report(const CMatrix& m, double count_tol);

/// det M(k) of the raw (unnormalised) matrix.
Complex secular_determinant(const SecularSystem& system, double k);

/// Convenience: system for a Platonic solid with the same coupling at every vertex.
SecularSystem make_system(const MetricGraph& graph, const CouplingSpec& spec);
SecularSystem make_system(Solid solid, const CouplingSpec& spec);

}  // namespace platospec
