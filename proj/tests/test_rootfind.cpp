#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracle_support.hpp"
#include "platospec/io.hpp"
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

// Tetrahedron PO on (0, 7], frozen after agreeing with the plane-wave oracle below.
const std::vector<std::pair<double, int>> kTetraPo = {
    {1.6309212028249753, 1}, {2.4648684161497401, 3}, {3.642666998881241, 3},
    {5.6924424445035671, 1}, {6.2831853071795865, 4}, {6.7831902810392286, 1},
};

}  // namespace

TEST_CASE("golden section on a parabola") {
  const auto r = golden_section_minimize([](double x) { return (x - 0.3) * (x - 0.3); }, 0.0, 1.0, 1e-12, 200);
  CHECK(r.converged);
  CHECK(r.x == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(r.hi - r.lo <= 1e-12);
}

TEST_CASE("refine_root on a synthetic detector") {
  Detector d = [](double k) {
    SigmaReport r;
    r.sigma_min = std::abs(k - 1.3);
    r.next_sigma = 1.0;
    r.near_zero_count = r.sigma_min < 1e-6 ? 1 : 0;
    return r;
  };
  const auto ok = refine_root(d, 1.2, 1.4, RootfindOptions{});
  REQUIRE(ok.status == RefineResult::Status::Accepted);
  CHECK(ok.eigenvalue->k == doctest::Approx(1.3).epsilon(1e-11));
  CHECK(ok.eigenvalue->multiplicity == 1);

  Detector shallow = [](double k) {
    SigmaReport r;
    r.sigma_min = 0.2 + std::abs(k - 1.3);
    r.next_sigma = 1.0;
    return r;
  };
  CHECK(refine_root(shallow, 1.2, 1.4, RootfindOptions{}).status == RefineResult::Status::Spurious);
}

TEST_CASE("tetrahedron PO low spectrum") {
  const auto sys = make_system(Solid::Tetrahedron, CouplingSpec::preferred_orientation());
  const auto cs = oracle::uniform(sys.graph(), CouplingSpec::preferred_orientation());
  for (auto [k, m] : kTetraPo) {
    CHECK(oracle::plane_wave_sigma_min(sys.graph(), cs, k) < 1e-9);
    CHECK(oracle::plane_wave_nullity(sys.graph(), cs, k) == m);
  }
  const auto s = scan_spectrum(sys, window(0.05, 7.0));
  CHECK(s.converged());
  REQUIRE(s.eigenvalues.size() == kTetraPo.size());
  for (std::size_t i = 0; i < kTetraPo.size(); ++i) {
    CHECK(std::abs(s.eigenvalues[i].k - kTetraPo[i].first) < 1e-9);
    CHECK(s.eigenvalues[i].multiplicity == kTetraPo[i].second);
    CHECK(s.eigenvalues[i].residual <= 1e-8);
    CHECK(s.eigenvalues[i].k_lo <= s.eigenvalues[i].k);
    CHECK(s.eigenvalues[i].k_hi >= s.eigenvalues[i].k);
  }
}

TEST_CASE("single edge Dirichlet: eigenfunction is a sine") {
  const auto g = graph_from_json(read_json_file(PLATOSPEC_TEST_DATA "/single_edge.json"));
  const auto sys = make_system(g, parse_coupling_kind("dirichlet"));
  const auto s = scan_spectrum(sys, window(0.05, 10.0));
  REQUIRE(s.eigenvalues.size() == 3);
  for (int n = 1; n <= 3; ++n) {
    const auto& ev = s.eigenvalues[n - 1];
    CHECK(std::abs(ev.k - n * pi) < 1e-10);
    const auto ns = eigenfunction_coefficients(sys, ev);
    REQUIRE(ns.basis.size() == 1);
    const auto& v = ns.basis[0];
    CHECK(std::abs(v(0)) < 1e-8);
    CHECK(std::abs(v(1)) == doctest::Approx(1.0));
    for (double x : {0.1, 0.37, 0.8})
      CHECK(std::abs(evaluate_edge(v, 0, ev.k, x)) == doctest::Approx(std::abs(std::sin(n * pi * x))).epsilon(1e-8));
  }
}

TEST_CASE("null space dimensions") {
  const auto octa = make_system(Solid::Octahedron, CouplingSpec::preferred_orientation());
  Eigenvalue ev;
  ev.k = 2.0 * pi;
  ev.multiplicity = 8;
  const auto ns = eigenfunction_coefficients(octa, ev);
  CHECK(ns.basis.size() == 8);
  CHECK(ns.residual < 1e-10);
  ev.multiplicity = 7;
  CHECK_THROWS_AS(eigenfunction_coefficients(octa, ev), std::runtime_error);

  const auto tetra = make_system(Solid::Tetrahedron, CouplingSpec::delta(0.0));
  ev.k = 2.0 * std::acos(1.0 / std::sqrt(3.0));
  ev.multiplicity = 3;
  CHECK(eigenfunction_coefficients(tetra, ev).basis.size() == 3);
}

TEST_CASE("Weyl count: 2nE eigenvalues up to 2 pi n") {
  for (Solid s : {Solid::Tetrahedron, Solid::Cube, Solid::Octahedron}) {
    const auto g = build_platonic(s);
    for (const auto& spec : {CouplingSpec::delta(0.0), CouplingSpec::preferred_orientation()}) {
      const auto sp = scan_spectrum(make_system(g, spec), window(0.05, 20.0 * pi));
      CAPTURE(to_string(s));
      CHECK(sp.converged());
      CHECK(std::abs(sp.total_multiplicity() - 20 * g.edge_count()) <= g.vertex_count());
    }
  }
}

TEST_CASE("scan is deterministic across thread counts") {
  const auto sys = make_system(Solid::Cube, CouplingSpec::delta(1.0));
  auto o = window(0.05, 4.0 * pi);
  o.threads = 1;
  const auto a = scan_spectrum(sys, o);
  o.threads = 4;
  const auto b = scan_spectrum(sys, o);
  REQUIRE(a.eigenvalues.size() == b.eigenvalues.size());
  for (std::size_t i = 0; i < a.eigenvalues.size(); ++i) {
    CHECK(a.eigenvalues[i].k == b.eigenvalues[i].k);
    CHECK(a.eigenvalues[i].multiplicity == b.eigenvalues[i].multiplicity);
  }
}

TEST_CASE("merge adds sectors and keeps the larger count inside one") {
  Spectrum s;
  s.eigenvalues = {{1.0, 2, 1e-10, 1.0, 1.0, false, 0}, {1.0 + 5e-8, 1, 1e-10, 1.0, 1.0, false, 0},
                   {1.0 + 6e-8, 3, 1e-10, 1.0, 1.0, false, 1}, {2.0, 1, 1e-10, 2.0, 2.0, false, 0}};
  merge_spectrum(s, 1e-7);
  REQUIRE(s.eigenvalues.size() == 2);
  CHECK(s.eigenvalues[0].multiplicity == 5);
  CHECK(s.total_multiplicity() == 6);
}

TEST_CASE("option validation") {
  auto o = window(2.0, 1.0);
  CHECK_THROWS_AS(o.validate(), std::invalid_argument);
  o = window(0.05, 1.0);
  o.scan_step = 0.0;
  CHECK_THROWS_AS(o.validate(), std::invalid_argument);
  o = window(0.05, 1.0);
  o.tol_accept = 1.0;
  o.promote_tol = 1e-3;
  CHECK_THROWS_AS(o.validate(), std::invalid_argument);
}
