#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "platospec/rootfind.hpp"

using namespace platospec;
using std::numbers::pi;

namespace {

RootfindOptions window(double lo, double hi) {
  RootfindOptions o;
  o.k_min = lo;
  o.k_max = hi;
  return o;
}

// Same roots with the same multiplicities, matched in order.
bool same_spectrum(const Spectrum& a, const Spectrum& b, double tol) {
  if (a.eigenvalues.size() != b.eigenvalues.size()) return false;
  for (std::size_t i = 0; i < a.eigenvalues.size(); ++i) {
    if (std::abs(a.eigenvalues[i].k - b.eigenvalues[i].k) > tol) return false;
    if (a.eigenvalues[i].multiplicity != b.eigenvalues[i].multiplicity) return false;
  }
  return true;
}

std::vector<VertexCoupling> uniform(const MetricGraph& g, const CouplingSpec& spec) {
  std::vector<VertexCoupling> out;
  for (const auto& v : g.vertices()) out.push_back(spec.instantiate(v.degree()));
  return out;
}

}  // namespace

TEST_CASE("flipping edges and rotating vertex orders keeps the PO spectrum") {
  const auto g = build_platonic(Solid::Tetrahedron);
  const auto spec = CouplingSpec::preferred_orientation();
  const auto o = window(0.05, 20.0);
  const auto ref = scan_spectrum(make_system(g, spec), o);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 3; ++trial) {
    MetricGraph h = g;
    for (int e = 0; e < h.edge_count(); ++e)
      if (rng() % 2) h = flip_edge(h, e);
    for (int v = 0; v < h.vertex_count(); ++v) h = rotate_vertex_order(h, v, static_cast<int>(rng() % 3));
    CHECK(same_spectrum(ref, scan_spectrum(make_system(h, spec), o), 1e-9));
  }
}

TEST_CASE("delta spectrum ignores every reordering") {
  const auto g = build_platonic(Solid::Cube);
  const auto spec = CouplingSpec::delta(-1.0);
  const auto o = window(0.05, 10.0);
  const auto ref = scan_spectrum(make_system(g, spec), o);
  const auto h = permute_vertex_order(flip_edge(g, 3), 4, {2, 0, 1});
  CHECK(same_spectrum(ref, scan_spectrum(make_system(h, spec), o), 1e-9));
}

TEST_CASE("a transposition at one octahedron vertex changes the PO spectrum") {
  const auto g = build_platonic(Solid::Octahedron);
  const auto spec = CouplingSpec::preferred_orientation();
  const auto o = window(0.05, 7.0);
  const auto ref = scan_spectrum(make_system(g, spec), o);
  const auto t = scan_spectrum(make_system(permute_vertex_order(g, 0, {1, 0, 2, 3}), spec), o);
  CHECK_FALSE(same_spectrum(ref, t, 1e-6));
}

TEST_CASE("conjugate and transposed couplings are isospectral") {
  for (Solid s : {Solid::Tetrahedron, Solid::Octahedron}) {
    const auto g = build_platonic(s);
    const auto cs = uniform(g, CouplingSpec::preferred_orientation());
    std::vector<VertexCoupling> conj, trans;
    for (const auto& c : cs) {
      conj.push_back(VertexCoupling::custom(c.matrix().conjugate()));
      trans.push_back(VertexCoupling::custom(c.matrix().transpose()));
    }
    const auto o = window(0.05, 8.0);
    const auto ref = scan_spectrum(SecularSystem(g, cs), o);
    CHECK(same_spectrum(ref, scan_spectrum(SecularSystem(g, conj), o), 1e-9));
    CHECK(same_spectrum(ref, scan_spectrum(SecularSystem(g, trans), o), 1e-9));
  }
}

TEST_CASE("halving the scan step finds the same roots") {
  for (Solid s : {Solid::Cube, Solid::Octahedron, Solid::Icosahedron}) {
    for (const auto& spec : {CouplingSpec::delta(1.0), CouplingSpec::preferred_orientation()}) {
      const auto sys = make_system(s, spec);
      auto o = window(0.05, 4.0 * pi);
      const auto a = scan_spectrum(sys, o);
      o.scan_step /= 2.0;
      const auto b = scan_spectrum(sys, o);
      CAPTURE(to_string(s));
      CHECK(same_spectrum(a, b, 1e-9));
    }
  }
}

TEST_CASE("sigma_min and the determinant share zeros") {
  const auto sys = make_system(Solid::Cube, CouplingSpec::delta(1.0));
  const auto sp = scan_spectrum(sys, window(0.05, 8.0));
  for (const auto& ev : sp.eigenvalues) {
    const double scale = std::abs(secular_determinant(sys, ev.k + 0.05));
    CHECK(std::abs(secular_determinant(sys, ev.k)) < 1e-6 * scale);
  }
}

TEST_CASE("every accepted root has a null space of its multiplicity") {
  for (Solid s : kAllSolids) {
    for (const auto& spec : {CouplingSpec::delta(0.0), CouplingSpec::preferred_orientation()}) {
      const auto sys = make_system(s, spec);
      const auto sp = scan_spectrum(sys, window(0.05, 2.0 * pi + 0.1));
      for (const auto& ev : sp.eigenvalues) {
        CAPTURE(ev.k);
        const auto ns = eigenfunction_coefficients(sys, ev);
        CHECK(static_cast<int>(ns.basis.size()) == ev.multiplicity);
      }
    }
  }
}
