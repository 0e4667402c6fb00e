#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <numbers>
#include <sstream>

#include "platospec/cli.hpp"
#include "platospec/io.hpp"

using namespace platospec;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string temp_path(const std::string& name) { return (fs::temp_directory_path() / ("platospec_" + name)).string(); }

Spectrum sample() {
  Spectrum s;
  s.k_min = 0.05;
  s.k_max = 7.0;
  s.scan_step = 0.005;
  s.refinements = 12;
  s.eigenvalues = {{1.6309212028249753, 1, 2.76e-14, 1.6309212028249, 1.6309212028250, false, -1},
                   {6.283185307179586, 4, 1.1e-13, 6.2831853071795, 6.2831853071796, true, 2}};
  return s;
}

}  // namespace

TEST_CASE("spectrum CSV and JSON round-trip") {
  const auto s = sample();
  const auto c = spectrum_from_csv(spectrum_to_csv(s));
  REQUIRE(c.eigenvalues.size() == 2);
  CHECK(c.eigenvalues[1].k == s.eigenvalues[1].k);
  CHECK(c.eigenvalues[1].multiplicity == 4);
  const auto j = spectrum_from_json(spectrum_to_json(s));
  CHECK(j.eigenvalues[0].k == s.eigenvalues[0].k);
  CHECK(j.eigenvalues[1].cluster);
  CHECK(j.eigenvalues[1].sector == 2);
  CHECK(j.k_max == 7.0);
  CHECK(spectrum_to_json(s)["total_multiplicity"] == 5);
}

TEST_CASE("graph and coupling JSON round-trip") {
  for (Solid s : kAllSolids) CHECK(graph_from_json(graph_to_json(build_platonic(s))) == build_platonic(s));
  const auto spec = coupling_spec_from_json(nlohmann::json{{"kind", "delta"}, {"alpha", 2.5}});
  CHECK(spec.alpha == 2.5);
  CHECK(coupling_spec_from_json(coupling_spec_to_json(spec)).alpha == 2.5);
  CHECK_THROWS_AS(coupling_spec_from_json(nlohmann::json{{"kind", "custom"}, {"matrix", {{1, 1}, {0, 1}}}}),
                  ConfigError);
  CHECK_THROWS_AS(graph_from_json(nlohmann::json{{"edge_count", 1}, {"vertices", nlohmann::json::array()}}), ConfigError);
}

TEST_CASE("per-vertex coupling file") {
  const auto a = coupling_assignment_from_json(read_json_file(PLATOSPEC_TEST_DATA "/mixed_couplings.json"));
  CHECK(a.fallback.kind == CouplingSpec::Kind::Dirichlet);
  CHECK(a.overrides.at(1).kind == CouplingSpec::Kind::Neumann);
  // Dirichlet-Neumann edge: k = (n - 1/2) pi
  const auto r = run({"spectrum", "--graph-file", PLATOSPEC_TEST_DATA "/single_edge.json", "--coupling-file",
                      PLATOSPEC_TEST_DATA "/mixed_couplings.json", "--kmax", "5"});
  CHECK(r.code == kExitOk);
  const auto s = spectrum_from_csv(r.out);
  REQUIRE(s.eigenvalues.size() == 2);
  CHECK(s.eigenvalues[0].k == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
}

TEST_CASE("cli spectrum") {
  const auto r = run({"spectrum", "--solid", "octahedron", "--coupling", "po", "--window", "6:6.6", "--format", "json"});
  CHECK(r.code == kExitOk);
  const auto s = spectrum_from_json(nlohmann::json::parse(r.out));
  REQUIRE(s.eigenvalues.size() == 1);
  CHECK(s.eigenvalues[0].multiplicity == 8);

  const auto plot = temp_path("plot.csv");
  const auto out = temp_path("out.csv");
  CHECK(run({"spectrum", "--solid", "cube", "--coupling", "po", "--window", "31:32", "--emit-plot-data", plot, "-o", out})
            .code == kExitOk);
  CHECK(read_text_file(plot).rfind("k,multiplicity,dist_npi,k_dist_npi\n", 0) == 0);
  CHECK(spectrum_from_csv(read_text_file(out)).eigenvalues.size() > 0);
  std::remove(plot.c_str());
  std::remove(out.c_str());
}

TEST_CASE("cli verify, compare, oracles, export") {
  CHECK(run({"verify", "--solid", "tetrahedron", "--coupling", "po", "--window", "30:36.3"}).code == kExitOk);
  CHECK(run({"verify", "--solid", "cube", "--coupling", "delta", "--alpha", "1", "--window", "10:20"}).code == kExitOk);
  CHECK(run({"verify", "--solid", "cube", "--coupling", "dirichlet"}).code == kExitConfigError);

  const auto c = run({"compare", "--solid", "tetrahedron", "--coupling", "delta", "--coupling2", "delta", "--alpha2",
                      "0.001", "--kmax", "5"});
  CHECK(c.code == kExitOk);
  CHECK(c.out.rfind("k1,m1,k2,m2,abs_diff\n", 0) == 0);

  const auto o = run({"oracles", "--solid", "octahedron", "--coupling", "po", "--route", "component", "--kmax", "7"});
  CHECK(o.code == kExitOk);
  CHECK(spectrum_from_csv(o.out).total_multiplicity() == 24);

  const auto e = run({"export", "--solid", "tetrahedron", "--coupling", "po", "--k", "1.5"});
  CHECK(e.code == kExitOk);
  const auto doc = nlohmann::json::parse(e.out);
  CHECK(doc["secular_matrix"].size() == 12);
  CHECK(doc["couplings"].size() == 4);
}

TEST_CASE("cli config files and precedence") {
  const auto cfg = temp_path("cfg.json");
  write_text_file(cfg, R"({"command": "spectrum", "solid": "tetrahedron", "coupling": "po", "kmax": 2.0})");
  auto r = run({"--config", cfg});
  CHECK(r.code == kExitOk);
  CHECK(spectrum_from_csv(r.out).eigenvalues.size() == 1);
  // explicit flags win over the file
  r = run({"--config", cfg, "--kmax", "3.0"});
  CHECK(spectrum_from_csv(r.out).eigenvalues.size() == 2);
  std::remove(cfg.c_str());
}

TEST_CASE("cli exit codes for bad input") {
  const auto bad = temp_path("bad.json");
  write_text_file(bad, "{ not json");
  CHECK(run({"--config", bad}).code == kExitConfigError);
  write_text_file(bad, R"({"command": "spectrum", "solid": "cube", "kmax": [1, 2]})");
  CHECK(run({"--config", bad}).code == kExitConfigError);
  write_text_file(bad, R"({"edge_count": 2, "vertices": [{"id": 0, "ends": [{"edge": 0, "end": 0}]}]})");
  CHECK(run({"spectrum", "--graph-file", bad}).code == kExitConfigError);
  std::remove(bad.c_str());

  CHECK(run({}).code == kExitConfigError);
  CHECK(run({"spectrum"}).code == kExitConfigError);
  CHECK(run({"spectrum", "--solid", "torus"}).code == kExitConfigError);
  CHECK(run({"spectrum", "--solid", "cube", "--coupling", "magnetic"}).code == kExitConfigError);
  CHECK(run({"spectrum", "--solid", "cube", "--window", "5"}).code == kExitConfigError);
  CHECK(run({"spectrum", "--solid", "cube", "--window", "5:2"}).code == kExitConfigError);
  CHECK(run({"spectrum", "--solid", "cube", "--scan-step", "-1"}).code == kExitConfigError);
  CHECK(run({"spectrum", "--solid", "cube", "--format", "xml"}).code == kExitConfigError);
  CHECK(run({"spectrum", "--config", "/nonexistent/cfg.json"}).code == kExitConfigError);
}

TEST_CASE("cli reports stalled refinement") {
  // An iteration cap of 1 cannot reach tol_accept.
  const auto r = run({"spectrum", "--solid", "tetrahedron", "--coupling", "po", "--kmax", "3", "--max-refine-iters", "1"});
  CHECK(r.code == kExitNotConverged);
  CHECK(r.err.find("stalled") != std::string::npos);
}
