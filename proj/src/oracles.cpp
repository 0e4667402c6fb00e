#include "platospec/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace platospec {

namespace {

using std::cos;
using std::sin;

void check_branch(Solid solid, int branch) {
  if (branch < 0 || branch >= sector_count(solid))
    throw std::out_of_range("branch " + std::to_string(branch) + " out of range for " +
                            std::string(to_string(solid)));
}

Complex tetra_delta(int j, double k, double a, Complex o) {
  const double s = sin(k), c = cos(k);
  if (j == 0) return k * k * (2 * c + 3 * s * s - 2) + a * k * s * (2.0 / 3.0 - 2 * c) - a * a * s * s / 3.0;
  return s * (k * (o * o - 3.0 * o * c + 1.0) - a * o * s);
}

Complex tetra_po(int j, double k) {
  const double sh = sin(k / 2), ch = cos(k / 2);
  const double tail = k * k * ch * ch + 3 * ch * ch - 1;
  if (j == 0) return k * sh * sh * tail;
  const double sign = j == 1 ? -1.0 : 1.0;
  return k * sh * (k * sh - sign * std::numbers::sqrt3 * ch) * tail;
}

Complex cube_delta(double k, double a, Complex o) {
  const double s = sin(k), c = cos(k);
  const Complex p = k * o * o + k - 2.0 * k * o * c - a * o * s;
  return (sin(k / 2) * p - o * k * s * cos(k / 2)) * (cos(k / 2) * p + o * k * s * sin(k / 2));
}

Complex cube_po(double k, Complex o) {
  const double s = sin(k), c = cos(k);
  const Complex o2 = o * o, o3 = o2 * o, o4 = o3 * o;
  return std::pow(k, 6) * o2 * s * s * s + std::pow(k, 4) * s * (o4 + 2.0 * o3 * c - 6.0 * o2 * c * c + 2.0 * o * c + 1.0) +
         k * k * s * (-o4 + 6.0 * o3 * c - 9.0 * o2 * c * c - o2 + 6.0 * o * c - 1.0);
}

Complex octa_delta(int j, double k, double a, Complex o) {
  const double s = sin(k), c = cos(k);
  if (j == 0) {
    // The cos k term in the k^3 coefficient carries a minus sign; with a plus
    // sign the symmetric Kirchhoff modes at k = 2 pi n are lost.
    return k * k * k * (64 * c * s * s - 32 * s * s - 32 * c + 32) + k * k * a * s * (48 * s * s + 16 * c - 40) +
           k * a * a * s * s * (-12 * c + 2) - a * a * a * s * s * s;
  }
  return k * (-o * o + 4.0 * o * c - 1.0) * s * s + a * o * s * s * s;
}

Complex octa_po(int j, double k) {
  const double sh = sin(k / 2), ch = cos(k / 2), c = cos(k);
  const double c2 = ch * ch;
  const double lead = k * sh * sh;
  switch (j) {
    case 0:
      return lead * (4 * c2 - 1) * (k * k * c2 + c2 - 0.5);
    case 2:
      return lead * (c2 - 0.25) * (k * k * (ch - std::numbers::sqrt2 / 2) * (ch + std::numbers::sqrt2 / 2) + c2);
    default:
      return lead * (2 * std::pow(k, 4) * c * c2 + k * k * (1 + 4 * c2 * c) + 2 * c * c2);
  }
}

Complex dodeca_delta(double k, double a, Complex o) {
  const double s = sin(k), c = cos(k);
  const double s2 = s * s, s4 = s2 * s2;
  const Complex o2 = o * o, o3 = o2 * o, o4 = o3 * o;
  const Complex t4 = -9.0 * o4 * s2 + 6.0 * o4 * c - 9.0 * o3 * s2 + 54.0 * o2 * c * s2 + 81.0 * o * s4 + 6.0 * o4 +
                     6.0 * o3 * c + 9.0 * o2 * s2 + 6.0 * o3 - 36.0 * o2 * c - 144.0 * o * s2 + 54 * c * s2 - 12.0 * o2 +
                     12.0 * o * c + 9 * s2 + 60.0 * o - 36 * c - 12.0;
  const Complex t3 = 6.0 * o4 * c + 2.0 * o4 + 6.0 * o3 * c + 54.0 * o2 * s2 - 108.0 * o * c * s2 + 2.0 * o3 -
                     6.0 * o2 * c - 48.0 * o2 + 96.0 * o * c + 54 * s2 + 4.0 * o - 6 * c - 48.0;
  const Complex t2 = o4 + o3 - 18.0 * o2 * c - 54.0 * o * s2 - o2 + 52.0 * o - 18 * c - 1.0;
  // The alpha^3 coefficient depends on k through cos k in its middle term.
  const Complex t1 = o2 - 6.0 * o * c + 1.0;
  return std::pow(k, 4) * s2 * t4 + a * k * k * k * s2 * s * t3 + a * a * k * k * s4 * t2 -
         2.0 * a * a * a * k * s4 * s * t1 + a * a * a * a * o * s4 * s2;
}

Complex dodeca_po(double k, Complex o) {
  const double s = sin(k), c = cos(k);
  const double s2 = s * s, s4 = s2 * s2, s6 = s4 * s2;
  const Complex o2 = o * o, o3 = o2 * o, o4 = o3 * o;
  const double k2 = k * k, k4 = k2 * k2, k6 = k4 * k2;
  const Complex p4 = o4 + o3 + 2.0 * o2 * c - o2 - 12.0 * o * c * c + 2 * c - 1.0;
  const Complex p2 = o4 * (5 * s2 - 2 * c - 6) + o3 * (5 * s2 - 2 * c - 6) + o2 * (18 * c * s2 - 5 * s2 - 12 * c + 4) +
                     o * (54 * s4 - 88 * s2 - 4 * c + 36) + 18 * c * s2 - 5 * s2 - 12 * c + 4.0;
  const Complex p0 = o4 * (3 * s4 - 4 * c * s2) + o3 * (3 * s4 - 4 * c * s2) +
                     o2 * (54 * c * s4 - 3 * s4 - 48 * c * s2 + 8 * s2 + 8 * c - 8) +
                     4.0 * o * (27 * s6 - 51 * s4 - 2 * c * s2 + 28 * s2 + 4 * c - 4) + 54 * c * s4 - 3 * s4 -
                     48 * c * s2 + 8 * s2 + 8 * c - 8.0;
  return o * k6 * s6 + k4 * s4 * p4 + k2 * s2 * p2 + p0;
}

Complex icosa_delta(int j, double k, double a, Complex o) {
  const double s = sin(k), c = cos(k);
  const double s2 = s * s, s4 = s2 * s2, s6 = s4 * s2;
  if (j == 0) {
    return std::pow(k, 4) * s2 * (-625 * s4 - 500 * c * s2 + 1000 * s2 + 400 * c - 400) +
           a * k * k * k * s2 * s * (500 * c * s2 - 300 * s2 - 400 * c + 280) +
           a * a * k * k * s4 * (150 * s2 + 60 * c - 140) + a * a * a * k * s4 * s * (-20 * c + 4) - a * a * a * a * s6;
  }
  const Complex o2 = o * o, o3 = o2 * o, o4 = o3 * o;
  return k * k * s4 * (25.0 * o4 * c * c - 10.0 * o3 * c - o3 + o2 + o - 10 * c - 1.0) +
         k * a * s4 * s * (10.0 * o4 * c - 2.0 * o3 - 2.0) + a * a * o4 * s6;
}

Complex icosa_po(double k, Complex o) {
  const double s = sin(k), c = cos(k);
  const double s2 = s * s, s4 = s2 * s2, s6 = s4 * s2;
  const Complex o2 = o * o, o3 = o2 * o, o4 = o3 * o;
  const double k2 = k * k, k4 = k2 * k2, k6 = k4 * k2;
  const double qa = 19 * c * c + 4 * c + 1;
  const Complex p4 = o4 * qa + 2.0 * o3 * (21 * c * c + 2 * c + 1) + o2 * qa + 2.0 * o * (c - 1.0) + 2 * c - 2.0;
  const double ra = 45 * s4 - 20 * c * s2 - 64 * s2 - 12 * c + 12;
  const double rb = 4 * c * s2 + s2 - 2 * c + 2;
  const Complex p2 = -o4 * ra - 2.0 * o3 * (65 * s4 - 8 * c * s2 - 94 * s2 - 24 * c + 24) - o2 * ra + 2.0 * o * rb + 2 * rb;
  const double ta = 5 * s6 + 8 * c * s4 - 12 * s4 - 8 * c * s2 + 8 * s2;
  const double tc = 7 * c * s4 - 4 * c * s2 + 4 * s2;
  const Complex p0 = o4 * ta - 2.0 * o3 * (105 * s6 + 14 * c * s4 - 176 * s4 - 80 * c * s2 + 96 * s2 + 32 * c - 32) +
                     o2 * ta - 2.0 * o * tc - 2 * tc;
  // Leading coefficient is -w^2 (1 + w)^2, not -w^2; only with the (1 + w)^2
  // factor does the form agree with the reduced determinant.
  return -o2 * (1.0 + o) * (1.0 + o) * k6 * s6 + k4 * s4 * p4 + 2.0 * k2 * s2 * p2 + 2.0 * p0;
}

ComponentOperator make_component(Solid solid) {
  using E = EndSide;
  ComponentOperator op;
  op.solid = solid;
  const auto z = [](int e, int p = 0) { return TwistedEnd{e, E::Zero, p}; };
  const auto o = [](int e, int p = 0) { return TwistedEnd{e, E::One, p}; };
  switch (solid) {
    case Solid::Tetrahedron:
      op.edge_count = 2;
      op.vertices = {{z(0, 0), z(0, 1), z(0, 2)}, {o(0), z(1), o(1, 1)}};
      break;
    case Solid::Cube:
      op.edge_count = 3;
      op.vertices = {{z(0), z(1), o(0, 1)}, {o(1), z(2), o(2, 1)}};
      break;
    case Solid::Octahedron:
      op.edge_count = 3;
      op.vertices = {{z(0, 0), z(0, 1), z(0, 2), z(0, 3)},
                     {o(2, 3), o(2, 2), o(2, 1), o(2, 0)},
                     {o(0), z(1), z(2), o(1, 1)}};
      break;
    case Solid::Dodecahedron:
      op.edge_count = 6;
      op.vertices = {{z(0), z(1), o(0, 1)}, {o(1), z(2), z(3)}, {o(2), o(3, 4), z(4)}, {o(4), z(5), o(5, 1)}};
      break;
    case Solid::Icosahedron:
      op.edge_count = 6;
      op.vertices = {{z(0, 0), z(0, 1), z(0, 2), z(0, 3), z(0, 4)},
                     {o(0), z(1), z(2), z(3), o(1, 1)},
                     {o(3), z(4), z(5, 1), o(4, 1), o(2, 1)},
                     {o(5, 4), o(5, 3), o(5, 2), o(5, 1), o(5, 0)}};
      break;
  }
  return op;
}

}  // namespace

int sector_count(Solid solid) {
  switch (solid) {
    case Solid::Tetrahedron:
      return 3;
    case Solid::Cube:
    case Solid::Octahedron:
      return 4;
    case Solid::Dodecahedron:
    case Solid::Icosahedron:
      return 5;
  }
  throw std::invalid_argument("unknown solid");
}

Complex sector_phase(Solid solid, int branch) {
  return std::polar(1.0, 2.0 * std::numbers::pi * branch / sector_count(solid));
}

Complex closed_form(Solid solid, OracleCoupling coupling, int j, double k, double alpha) {
  check_branch(solid, j);
  const Complex o = sector_phase(solid, j);
  const bool po = coupling == OracleCoupling::PreferredOrientation;
  switch (solid) {
    case Solid::Tetrahedron:
      return po ? tetra_po(j, k) : tetra_delta(j, k, alpha, o);
    case Solid::Cube:
      return po ? cube_po(k, o) : cube_delta(k, alpha, o);
    case Solid::Octahedron:
      return po ? octa_po(j, k) : octa_delta(j, k, alpha, o);
    case Solid::Dodecahedron:
      return po ? dodeca_po(k, o) : dodeca_delta(k, alpha, o);
    case Solid::Icosahedron:
      return po ? icosa_po(k, o) : icosa_delta(j, k, alpha, o);
  }
  throw std::invalid_argument("unknown solid");
}

bool closed_form_is_exact(Solid solid, OracleCoupling coupling) {
  return !(coupling == OracleCoupling::PreferredOrientation &&
           (solid == Solid::Dodecahedron || solid == Solid::Icosahedron));
}

const ComponentOperator& component_operator(Solid solid) {
  static const ComponentOperator ops[] = {make_component(Solid::Tetrahedron), make_component(Solid::Cube),
                                          make_component(Solid::Octahedron), make_component(Solid::Dodecahedron),
                                          make_component(Solid::Icosahedron)};
  return ops[static_cast<int>(solid)];
}

namespace {

// k-independent part of the reduced system: per vertex, the distinct ends and
// a basis C = (C_val | C_der) of the row space of ((U - I) W | i (U + I) W).
struct ReducedVertex {
  std::vector<std::pair<int, EndSide>> ends;
  CMatrix cond;
};

struct ReducedSystem {
  int edge_count = 0;
  std::vector<ReducedVertex> vertices;
};

ReducedSystem reduce(Solid solid, OracleCoupling coupling, int branch, double alpha) {
  check_branch(solid, branch);
  const auto& op = component_operator(solid);
  const Complex omega = sector_phase(solid, branch);
  ReducedSystem out;
  out.edge_count = op.edge_count;
  for (const auto& ends : op.vertices) {
    const int d = static_cast<int>(ends.size());
    const VertexCoupling u = coupling == OracleCoupling::PreferredOrientation
                                 ? VertexCoupling::preferred_orientation(d)
                                 : VertexCoupling::delta(d, alpha);
    const auto [a, b] = coupling_rows(u);

    ReducedVertex rv;
    for (const auto& e : ends) {
      const std::pair<int, EndSide> key{e.edge, e.end};
      if (std::find(rv.ends.begin(), rv.ends.end(), key) == rv.ends.end()) rv.ends.push_back(key);
    }
    const int ne = static_cast<int>(rv.ends.size());
    CMatrix w = CMatrix::Zero(d, ne);
    for (int r = 0; r < d; ++r) {
      const auto pos = std::find(rv.ends.begin(), rv.ends.end(), std::pair<int, EndSide>{ends[r].edge, ends[r].end});
      w(r, pos - rv.ends.begin()) += std::pow(omega, ends[r].power);
    }
    CMatrix red(d, 2 * ne);
    red << a * w, b * w;
    Eigen::JacobiSVD<CMatrix> svd(red, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > 1e-10 * sv(0)) ++rank;
    rv.cond = svd.matrixV().leftCols(rank).adjoint();
    out.vertices.push_back(std::move(rv));
  }
  return out;
}

CMatrix assemble_reduced(const ReducedSystem& sys, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("component matrix needs k > 0");
  const double c = cos(k), s = sin(k);
  const int dim = 2 * sys.edge_count;
  CMatrix m(dim, dim);
  int row = 0;
  for (const auto& rv : sys.vertices) {
    const int ne = static_cast<int>(rv.ends.size());
    CMatrix val = CMatrix::Zero(ne, dim), der = CMatrix::Zero(ne, dim);
    for (int r = 0; r < ne; ++r) {
      const int e = rv.ends[r].first;
      if (rv.ends[r].second == EndSide::Zero) {
        val(r, 2 * e) = 1.0;
        der(r, 2 * e + 1) = k;
      } else {
        val(r, 2 * e) = c;
        val(r, 2 * e + 1) = s;
        der(r, 2 * e) = k * s;
        der(r, 2 * e + 1) = -k * c;
      }
    }
    for (Eigen::Index r = 0; r < rv.cond.rows(); ++r, ++row) {
      if (row >= dim) throw std::logic_error("reduced system is not square");
      const auto cv = rv.cond.row(r).leftCols(ne);
      const auto cd = rv.cond.row(r).rightCols(ne);
      const double scale = cv.norm() + k * cd.norm();
      m.row(row) = (cv * val + cd * der) / scale;
    }
  }
  if (row != dim) throw std::logic_error("reduced system is not square");
  return m;
}

}  // namespace

CMatrix assemble_component(Solid solid, OracleCoupling coupling, int branch, double k, double alpha) {
  return assemble_reduced(reduce(solid, coupling, branch, alpha), k);
}

Spectrum oracle_sector_spectrum(Solid solid, OracleCoupling coupling, int branch, double alpha,
                                const RootfindOptions& opts, OracleRoute route) {
  check_branch(solid, branch);
  Spectrum spec;
  if (route == OracleRoute::ClosedForm) {
    spec = scan_scalar_zeros([&](double k) { return closed_form(solid, coupling, branch, k, alpha); }, opts);
  } else {
    const ReducedSystem sys = reduce(solid, coupling, branch, alpha);
    const double tol = multiplicity_tolerance(2 * sys.edge_count);
    spec = scan_detector([&](double k) { return singular_report(assemble_reduced(sys, k), tol); }, opts);
  }
  for (auto& ev : spec.eigenvalues) ev.sector = branch;
  return spec;
}

Spectrum oracle_union_spectrum(Solid solid, OracleCoupling coupling, double alpha, const RootfindOptions& opts,
                               OracleRoute route) {
  Spectrum all;
  all.k_min = opts.k_min;
  all.k_max = opts.k_max;
  all.scan_step = opts.scan_step;
  for (int j = 0; j < sector_count(solid); ++j) {
    auto part = oracle_sector_spectrum(solid, coupling, j, alpha, opts, route);
    all.eigenvalues.insert(all.eigenvalues.end(), part.eigenvalues.begin(), part.eigenvalues.end());
    all.rejected.insert(all.rejected.end(), part.rejected.begin(), part.rejected.end());
    all.refinements += part.refinements;
  }
  merge_spectrum(all, opts.merge_tol);
  return all;
}

}  // namespace platospec
