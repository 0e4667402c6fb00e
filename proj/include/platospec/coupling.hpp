#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "platospec/graph.hpp"

namespace platospec {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

enum class CouplingKind { Delta, PreferredOrientation, Custom };

/// Unitary vertex coupling U; the vertex condition is
/// (U - I) Psi + i (U + I) Psi' = 0 with Psi' the outgoing derivatives.
class VertexCoupling {
 public:
  /// U = 2/(d + i alpha) J - I. Throws std::invalid_argument if d < 1.
  static VertexCoupling delta(int degree, double alpha);
  /// Cyclic shift: row m has its single 1 in column (m + 1) mod d. Needs d >= 2.
  static VertexCoupling preferred_orientation(int degree);
  /// Any matrix unitary to within 1e-10; throws std::invalid_argument otherwise.
  static VertexCoupling custom(CMatrix matrix);

  const CMatrix& matrix() const { return matrix_; }
  CouplingKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  int degree() const { return static_cast<int>(matrix_.rows()); }

 private:
  VertexCoupling(CMatrix matrix, CouplingKind kind, double alpha)
      : matrix_(std::move(matrix)), kind_(kind), alpha_(alpha) {}

  CMatrix matrix_;
  CouplingKind kind_ = CouplingKind::Custom;
  double alpha_ = 0.0;
};

/// f = 0, f' = 0 or f' = c f at a single end (outgoing derivative).
struct BoundaryCondition {
  enum class Type { Dirichlet, Neumann, Robin };
  Type type = Type::Dirichlet;
  Complex robin{0.0, 0.0};

  static BoundaryCondition dirichlet() { return {Type::Dirichlet, {}}; }
  static BoundaryCondition neumann() { return {Type::Neumann, {}}; }
  static BoundaryCondition robin_with(Complex c) { return {Type::Robin, c}; }

  /// Scalar U with (U - 1) f + i (U + 1) f' = 0 equivalent to this condition.
  /// Robin(c) maps to (i + c)/(i - c), so Robin(0) coincides with Neumann.
  Complex scattering_value() const;
  /// 1x1 coupling; throws if the condition is not self-adjoint (non-real Robin constant).
  VertexCoupling to_coupling() const;
};

/// A = U - I and B = i (U + I); the vertex condition is A Psi + B Psi' = 0.
struct CouplingRows {
  CMatrix a;
  CMatrix b;
};

CouplingRows coupling_rows(const VertexCoupling& coupling);

/// max |(U* U - I)_ij|
double unitarity_defect(const CMatrix& u);

/// Numerical rank of the d x 2d block (A|B).
int coupling_rank(const CouplingRows& rows, double tol = 1e-10);

/// Coupling description that can be instantiated at any vertex degree.
struct CouplingSpec {
  enum class Kind { Delta, PreferredOrientation, Dirichlet, Neumann, Robin, Custom };
  Kind kind = Kind::Delta;
  double alpha = 0.0;
  Complex robin{0.0, 0.0};
  CMatrix matrix;  // Custom only

  static CouplingSpec delta(double alpha) { return {Kind::Delta, alpha, {}, {}}; }
  static CouplingSpec preferred_orientation() { return {Kind::PreferredOrientation, 0.0, {}, {}}; }

  /// Dirichlet/Neumann/Robin act as decoupled end conditions: U = u I_d.
  VertexCoupling instantiate(int degree) const;
  std::string label() const;
};

/// Parses "po", "preferred_orientation", "delta", "kirchhoff", "dirichlet", "neumann".
CouplingSpec parse_coupling_kind(const std::string& name, double alpha = 0.0);

/// A default coupling plus per-vertex overrides.
struct CouplingAssignment {
  CouplingSpec fallback = CouplingSpec::delta(0.0);
  std::map<int, CouplingSpec> overrides;

  std::vector<VertexCoupling> resolve(const MetricGraph& graph) const;
};

}  // namespace platospec
