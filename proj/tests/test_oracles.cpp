#include <doctest.h>

#include <cmath>
#include <numbers>

#include "platospec/oracles.hpp"
#include "platospec/secular.hpp"

using namespace platospec;
using std::numbers::pi;

namespace {

RootfindOptions window(double lo, double hi) {
  RootfindOptions o;
  o.k_min = lo;
  o.k_max = hi;
  return o;
}

bool has_root(const Spectrum& s, double k, double tol) {
  for (const auto& ev : s.eigenvalues)
    if (std::abs(ev.k - k) <= tol) return true;
  return false;
}

}  // namespace

TEST_CASE("sector phases are roots of unity") {
  for (Solid s : kAllSolids) {
    const int p = sector_count(s);
    for (int j = 0; j < p; ++j) {
      const Complex w = sector_phase(s, j);
      CHECK(std::abs(std::abs(w) - 1.0) < 1e-15);
      CHECK(std::abs(std::pow(w, p) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("closed forms vanish on the known families") {
  // Kirchhoff tetrahedron: cos k = -1/3
  const double t = std::acos(-1.0 / 3.0);
  bool hit = false;
  for (int j = 0; j < sector_count(Solid::Tetrahedron); ++j)
    hit = hit || std::abs(closed_form(Solid::Tetrahedron, OracleCoupling::Delta, j, t)) < 1e-10;
  CHECK(hit);
  // octahedron PO: 2 pi n is a zero in every sector
  for (int j = 0; j < sector_count(Solid::Octahedron); ++j)
    CHECK(std::abs(closed_form(Solid::Octahedron, OracleCoupling::PreferredOrientation, j, 2.0 * pi)) < 1e-9);
}

TEST_CASE("octahedron PO sectors") {
  const auto o = window(0.05, 2.2);
  const auto s0 = oracle_sector_spectrum(Solid::Octahedron, OracleCoupling::PreferredOrientation, 0, 0.0, o);
  bool seen = false;
  for (const auto& ev : s0.eigenvalues)
    if (std::abs(ev.k - 2.0 * pi / 3.0) < 1e-8) {
      seen = true;
      CHECK(ev.multiplicity == 1);
    }
  CHECK(seen);
  const auto u = oracle_union_spectrum(Solid::Octahedron, OracleCoupling::PreferredOrientation, 0.0, window(0.05, 6.5));
  for (const auto& ev : u.eigenvalues) {
    if (std::abs(ev.k - 2.0 * pi / 3.0) < 1e-8) CHECK(ev.multiplicity == 2);
    if (std::abs(ev.k - 2.0 * pi) < 1e-8) CHECK(ev.multiplicity == 8);
  }
}

TEST_CASE("component operators match the full sector count") {
  for (Solid s : kAllSolids) {
    const auto& op = component_operator(s);
    CHECK(op.edge_count * sector_count(s) == build_platonic(s).edge_count());
    CHECK(assemble_component(s, OracleCoupling::Delta, 0, 1.3).rows() == 2 * op.edge_count);
  }
}

TEST_CASE("closed form and component routes agree") {
  for (Solid s : kAllSolids) {
    for (auto c : {OracleCoupling::Delta, OracleCoupling::PreferredOrientation}) {
      if (!closed_form_is_exact(s, c)) continue;
      const auto o = window(0.05, 2.0 * pi);
      const auto a = oracle_union_spectrum(s, c, 1.0, o, OracleRoute::ClosedForm);
      const auto b = oracle_union_spectrum(s, c, 1.0, o, OracleRoute::ComponentOperator);
      CAPTURE(to_string(s));
      CHECK(a.total_multiplicity() == b.total_multiplicity());
      for (const auto& ev : b.eigenvalues) CHECK(has_root(a, ev.k, 1e-8));
    }
  }
}

TEST_CASE("truncated PO forms approach the exact roots at high k") {
  auto o = window(40.0, 41.0);
  o.scan_step = 0.0005;
  for (Solid s : {Solid::Dodecahedron, Solid::Icosahedron}) {
    CHECK_FALSE(closed_form_is_exact(s, OracleCoupling::PreferredOrientation));
    const auto exact = oracle_union_spectrum(s, OracleCoupling::PreferredOrientation, 0.0, o, OracleRoute::ComponentOperator);
    const auto approx = oracle_union_spectrum(s, OracleCoupling::PreferredOrientation, 0.0, o, OracleRoute::ClosedForm);
    for (const auto& ev : exact.eigenvalues) CHECK(has_root(approx, ev.k, 1e-4));
  }
}
