#include "platospec/secular.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <string>
#include <vector>
#include <stdexcept>

#include <lapacke.h>

namespace platospec {

SecularSystem::SecularSystem(MetricGraph graph, std::vector<VertexCoupling> couplings)
    : graph_(std::move(graph)), couplings_(std::move(couplings)) {
  if (static_cast<int>(couplings_.size()) != graph_.vertex_count())
    throw std::invalid_argument("dimension mismatch: " + std::to_string(couplings_.size()) + " couplings for " +
                                std::to_string(graph_.vertex_count()) + " vertices");
  rows_.reserve(couplings_.size());
  for (int v = 0; v < graph_.vertex_count(); ++v) {
    if (couplings_[v].degree() != graph_.vertex(v).degree())
      throw std::invalid_argument("dimension mismatch at vertex " + std::to_string(v) + ": coupling size " +
                                  std::to_string(couplings_[v].degree()) + ", degree " +
                                  std::to_string(graph_.vertex(v).degree()));
    rows_.push_back(coupling_rows(couplings_[v]));
  }
}

CMatrix assemble(const SecularSystem& system, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("secular matrix needs k > 0");
  const int dim = system.dimension();
  CMatrix m = CMatrix::Zero(dim, dim);
  const double c = std::cos(k);
  const double s = std::sin(k);

  int row = 0;
  for (const auto& vertex : system.graph_.vertices()) {
    const auto& [a, b] = system.rows_[vertex.id];
    const int d = vertex.degree();
    for (int i = 0; i < d; ++i, ++row) {
      for (int slot = 0; slot < d; ++slot) {
        const auto& end = vertex.ends[slot];
        const int ca = 2 * end.edge;
        const int cb = ca + 1;
        const Complex va = a(i, slot);
        const Complex vb = b(i, slot);
        if (end.end == EndSide::Zero) {
          // f(0) = a, outgoing f'(0) = k b
          m(row, ca) += va;
          m(row, cb) += vb * k;
        } else {
          // f(1) = a cos k + b sin k, outgoing -f'(1) = k (a sin k - b cos k)
          m(row, ca) += va * c + vb * (k * s);
          m(row, cb) += va * s - vb * (k * c);
        }
      }
    }
  }
  return m;
}

void normalize_rows(CMatrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const double mx = m.row(r).cwiseAbs().maxCoeff();
    if (mx > 0.0) m.row(r) /= mx;
  }
}

CMatrix assemble_normalized(const SecularSystem& system, double k) {
  CMatrix m = assemble(system, k);
  normalize_rows(m);
  return m;
}

double multiplicity_tolerance(int dimension) { return 1e-6 * std::sqrt(static_cast<double>(dimension)); }

namespace {

Eigen::VectorXd gesvd(CMatrix a, CMatrix* v) {
  const auto rows = static_cast<lapack_int>(a.rows());
  const auto cols = static_cast<lapack_int>(a.cols());
  const lapack_int n = std::min(rows, cols);
  Eigen::VectorXd sv(n);
  if (n == 0) return sv;
  std::vector<double> superb(std::max<lapack_int>(1, n - 1));
  CMatrix vh;
  if (v) vh.resize(cols, cols);
  const lapack_int info = LAPACKE_zgesvd(
      LAPACK_COL_MAJOR, 'N', v ? 'A' : 'N', rows, cols, reinterpret_cast<lapack_complex_double*>(a.data()), rows,
      sv.data(), nullptr, 1, v ? reinterpret_cast<lapack_complex_double*>(vh.data()) : nullptr, v ? cols : 1,
      superb.data());
  if (info != 0) throw std::runtime_error("zgesvd failed with info " + std::to_string(info));
  if (v) *v = vh.adjoint();
  return sv;
}

}  // namespace

Eigen::VectorXd singular_values(const CMatrix& m) { return gesvd(m, nullptr); }

Eigen::VectorXd singular_values(const CMatrix& m, CMatrix& v) { return gesvd(m, &v); }

SigmaReport singular_report(const CMatrix& m, double count_tol) {
  SigmaReport rep;
  rep.singular_values = singular_values(m);
  const auto n = rep.singular_values.size();
  rep.sigma_min = n > 0 ? rep.singular_values(n - 1) : 0.0;
  rep.next_sigma = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    if (rep.singular_values(i) < count_tol) {
      ++rep.near_zero_count;
    } else {
      rep.next_sigma = rep.singular_values(i);
      break;
    }
  }
  return rep;
}

SigmaReport sigma_min(const SecularSystem& system, double k, double count_tol) {
  return singular_report(assemble_normalized(system, k), count_tol);
}

SigmaReport sigma_min(const SecularSystem& system, double k) {
  return sigma_min(system, k, multiplicity_tolerance(system.dimension()));
}

Complex secular_determinant(const SecularSystem& system, double k) {
  return assemble(system, k).partialPivLu().determinant();
}

SecularSystem make_system(const MetricGraph& graph, const CouplingSpec& spec) {
  CouplingAssignment assignment;
  assignment.fallback = spec;
  return SecularSystem(graph, assignment.resolve(graph));
}

SecularSystem make_system(Solid solid, const CouplingSpec& spec) { return make_system(build_platonic(solid), spec); }

}  // namespace platospec
