#include "platospec/coupling.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace platospec {

namespace {
constexpr double kCustomUnitarityTol = 1e-10;
const Complex kI{0.0, 1.0};
}  // namespace

VertexCoupling VertexCoupling::delta(int degree, double alpha) {
  if (degree < 1) throw std::invalid_argument("delta coupling needs degree >= 1");
  const Complex factor = 2.0 / (static_cast<double>(degree) + kI * alpha);
  CMatrix u = CMatrix::Constant(degree, degree, factor);
  u.diagonal().array() -= 1.0;
  return VertexCoupling(std::move(u), CouplingKind::Delta, alpha);
}

VertexCoupling VertexCoupling::preferred_orientation(int degree) {
  if (degree < 2) throw std::invalid_argument("preferred-orientation coupling needs degree >= 2");
  CMatrix u = CMatrix::Zero(degree, degree);
  for (int m = 0; m < degree; ++m) u(m, (m + 1) % degree) = 1.0;
  return VertexCoupling(std::move(u), CouplingKind::PreferredOrientation, 0.0);
}

VertexCoupling VertexCoupling::custom(CMatrix matrix) {
  if (matrix.rows() != matrix.cols() || matrix.rows() < 1)
    throw std::invalid_argument("coupling matrix must be square and non-empty");
  const double defect = unitarity_defect(matrix);
  if (!(defect <= kCustomUnitarityTol)) {
    std::ostringstream msg;
    msg << "coupling matrix is not unitary (defect " << defect << ")";
    throw std::invalid_argument(msg.str());
  }
  return VertexCoupling(std::move(matrix), CouplingKind::Custom, 0.0);
}

Complex BoundaryCondition::scattering_value() const {
  switch (type) {
    case Type::Dirichlet: return -1.0;
    case Type::Neumann: return 1.0;
    case Type::Robin: return (kI + robin) / (kI - robin);
  }
  return 1.0;
}

VertexCoupling BoundaryCondition::to_coupling() const {
  CMatrix u(1, 1);
  u(0, 0) = scattering_value();
  return VertexCoupling::custom(std::move(u));
}

CouplingRows coupling_rows(const VertexCoupling& coupling) {
  const auto& u = coupling.matrix();
  const CMatrix id = CMatrix::Identity(u.rows(), u.cols());
  return {u - id, kI * (u + id)};
}

double unitarity_defect(const CMatrix& u) {
  if (u.rows() != u.cols()) return INFINITY;
  const CMatrix e = u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols());
  return e.cwiseAbs().maxCoeff();
}

int coupling_rank(const CouplingRows& rows, double tol) {
  CMatrix ab(rows.a.rows(), rows.a.cols() + rows.b.cols());
  ab << rows.a, rows.b;
  Eigen::JacobiSVD<CMatrix> svd(ab);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 0;
  return static_cast<int>((s.array() > tol * std::max(1.0, s(0))).count());
}

VertexCoupling CouplingSpec::instantiate(int degree) const {
  switch (kind) {
    case Kind::Delta: return VertexCoupling::delta(degree, alpha);
    case Kind::PreferredOrientation: return VertexCoupling::preferred_orientation(degree);
    case Kind::Dirichlet:
    case Kind::Neumann:
    case Kind::Robin: {
      BoundaryCondition bc{kind == Kind::Dirichlet  ? BoundaryCondition::Type::Dirichlet
                           : kind == Kind::Neumann ? BoundaryCondition::Type::Neumann
                                                   : BoundaryCondition::Type::Robin,
                           robin};
      const Complex u = bc.scattering_value();
      return VertexCoupling::custom(CMatrix::Identity(degree, degree) * u);
    }
    case Kind::Custom:
      if (matrix.rows() != degree)
        throw std::invalid_argument("custom coupling of size " + std::to_string(matrix.rows()) +
                                    " at a vertex of degree " + std::to_string(degree));
      return VertexCoupling::custom(matrix);
  }
  throw std::logic_error("unhandled coupling kind");
}

std::string CouplingSpec::label() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Delta: out << "delta(alpha=" << alpha << ")"; break;
    case Kind::PreferredOrientation: out << "preferred_orientation"; break;
    case Kind::Dirichlet: out << "dirichlet"; break;
    case Kind::Neumann: out << "neumann"; break;
    case Kind::Robin: out << "robin(" << robin.real() << "," << robin.imag() << ")"; break;
    case Kind::Custom: out << "custom"; break;
  }
  return out.str();
}

CouplingSpec parse_coupling_kind(const std::string& name, double alpha) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "po" || lower == "preferred_orientation" || lower == "preferred-orientation")
    return CouplingSpec::preferred_orientation();
  if (lower == "delta") return CouplingSpec::delta(alpha);
  if (lower == "kirchhoff") return CouplingSpec::delta(0.0);
  if (lower == "dirichlet") return {CouplingSpec::Kind::Dirichlet, 0.0, {}, {}};
  if (lower == "neumann") return {CouplingSpec::Kind::Neumann, 0.0, {}, {}};
  if (lower == "robin") return {CouplingSpec::Kind::Robin, 0.0, Complex(alpha, 0.0), {}};
  throw std::invalid_argument("unknown coupling kind '" + name + "'");
}

std::vector<VertexCoupling> CouplingAssignment::resolve(const MetricGraph& graph) const {
  for (const auto& [id, _] : overrides) graph.vertex(id);  // throws on unknown ids
  std::vector<VertexCoupling> out;
  out.reserve(graph.vertex_count());
  for (const auto& v : graph.vertices()) {
    const auto it = overrides.find(v.id);
    out.push_back((it != overrides.end() ? it->second : fallback).instantiate(v.degree()));
  }
  return out;
}

}  // namespace platospec
