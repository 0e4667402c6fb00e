#include "platospec/cli.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "platospec/asymptotics.hpp"
#include "platospec/io.hpp"
#include "platospec/oracles.hpp"

namespace platospec {

namespace {

using nlohmann::json;

struct RunConfig {
  std::string command;
  std::string solid;
  std::string graph_file;
  std::string coupling = "delta";
  double alpha = 0.0;
  std::string coupling2;
  double alpha2 = 0.0;
  std::string coupling_file;
  double k_min = 0.05;
  double k_max = 4.0 * std::numbers::pi;
  std::string window;
  std::string window2;
  std::string format = "csv";
  std::string output;
  std::string plot_data;
  std::string route = "closed-form";
  double export_k = 0.0;
  RootfindOptions opts;
};

std::pair<double, double> parse_window(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("window must look like a:b");
  try {
    std::size_t used = 0;
    const double a = std::stod(text.substr(0, colon), &used);
    if (used != colon) throw ConfigError("bad window '" + text + "'");
    const std::string rest = text.substr(colon + 1);
    const double b = std::stod(rest, &used);
    if (used != rest.size()) throw ConfigError("bad window '" + text + "'");
    return {a, b};
  } catch (const std::logic_error&) {
    throw ConfigError("bad window '" + text + "'");
  }
}

RootfindOptions window_options(const RunConfig& cfg) {
  RootfindOptions o = cfg.opts;
  o.k_min = cfg.k_min;
  o.k_max = cfg.k_max;
  if (!cfg.window.empty()) std::tie(o.k_min, o.k_max) = parse_window(cfg.window);
  // The secular matrix is not defined at k = 0.
  if (o.k_min <= 0.0) o.k_min = RootfindOptions{}.k_min;
  try {
    o.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return o;
}

Solid require_solid(const RunConfig& cfg) {
  if (cfg.solid.empty()) throw ConfigError("--solid is required for '" + cfg.command + "'");
  try {
    return parse_solid(cfg.solid);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

MetricGraph load_graph(const RunConfig& cfg) {
  if (!cfg.graph_file.empty() && !cfg.solid.empty()) throw ConfigError("give either --solid or --graph-file");
  if (!cfg.graph_file.empty()) return graph_from_json(read_json_file(cfg.graph_file));
  return build_platonic(require_solid(cfg));
}

CouplingSpec coupling_from_flags(const std::string& name, double alpha) {
  try {
    return parse_coupling_kind(name, alpha);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

SecularSystem load_system(const RunConfig& cfg, const std::string& coupling, double alpha, bool use_file) {
  const MetricGraph graph = load_graph(cfg);
  CouplingAssignment assignment;
  if (use_file && !cfg.coupling_file.empty())
    assignment = coupling_assignment_from_json(read_json_file(cfg.coupling_file));
  else
    assignment.fallback = coupling_from_flags(coupling, alpha);
  try {
    return SecularSystem(graph, assignment.resolve(graph));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const std::out_of_range& e) {
    throw ConfigError(e.what());
  }
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty())
    out << text;
  else
    write_text_file(cfg.output, text);
}

std::string plot_rows(const Spectrum& spectrum) {
  const Lattice lattice = Lattice::n_pi();
  std::string text = "k,multiplicity,dist_npi,k_dist_npi\n";
  for (const auto& ev : spectrum.eigenvalues) {
    const double d = lattice.distance(ev.k);
    text += format_double(ev.k) + "," + std::to_string(ev.multiplicity) + "," + format_double(d) + "," +
            format_double(ev.k * d) + "\n";
  }
  return text;
}

std::string render_spectrum(const RunConfig& cfg, const Spectrum& spectrum) {
  return cfg.format == "json" ? spectrum_to_json(spectrum).dump(2) + "\n" : spectrum_to_csv(spectrum);
}

void warn_rejections(const Spectrum& spectrum, std::ostream& err) {
  for (const auto& r : spectrum.rejected)
    if (r.reason == Rejection::Reason::NotConverged)
      err << "warning: minimum at k = " << format_double(r.k) << " stalled at sigma = " << format_double(r.sigma)
          << "\n";
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto opts = window_options(cfg);
  const auto system = load_system(cfg, cfg.coupling, cfg.alpha, true);
  const auto spectrum = scan_spectrum(system, opts);
  emit(cfg, render_spectrum(cfg, spectrum), out);
  if (!cfg.plot_data.empty()) write_text_file(cfg.plot_data, plot_rows(spectrum));
  warn_rejections(spectrum, err);
  return spectrum.converged() ? kExitOk : kExitNotConverged;
}

std::string targets_csv(const AsymptoticReport& rep) {
  std::string text = "target,constant,slack,max_scaled_dist,worst_k,count,multiplicity,pass\n";
  for (const auto* group : {&rep.targets, &rep.restatements})
    for (const auto& t : *group)
      text += t.target.name + "," + format_double(t.target.envelope.constant) + "," +
              format_double(t.target.envelope.slack) + "," + format_double(t.max_scaled_dist) + "," +
              format_double(t.worst_k) + "," + std::to_string(t.count) + "," + std::to_string(t.total_multiplicity) +
              "," + (t.pass ? "1" : "0") + "\n";
  return text;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Solid solid = require_solid(cfg);
  const auto opts = window_options(cfg);
  const auto kind = coupling_from_flags(cfg.coupling, cfg.alpha).kind;
  bool converged = true;
  bool pass = false;
  if (kind == CouplingSpec::Kind::PreferredOrientation) {
    const auto rep = check_theorem(solid, opts.k_min, opts.k_max, opts);
    emit(cfg, cfg.format == "csv" ? targets_csv(rep) : report_to_json(rep).dump(2) + "\n", out);
    converged = rep.spectrum_converged;
    pass = rep.pass();
    for (double k : rep.unassigned) err << "unassigned eigenvalue k = " << format_double(k) << "\n";
  } else if (kind == CouplingSpec::Kind::Delta) {
    double lo2 = 4.0 * opts.k_min;
    double hi2 = lo2 + (opts.k_max - opts.k_min);
    if (!cfg.window2.empty()) std::tie(lo2, hi2) = parse_window(cfg.window2);
    if (!(hi2 > lo2 && lo2 > 0.0)) throw ConfigError("second window must satisfy 0 < a < b");
    const auto cmp = compare_drift(solid, cfg.alpha, opts.k_min, opts.k_max, lo2, hi2, opts);
    if (cfg.format == "csv") {
      std::string text = "window_lo,window_hi,paired,max_scaled_drift,worst_k,unpaired\n";
      for (const auto* r : {&cmp.first, &cmp.second})
        text += format_double(r->k_lo) + "," + format_double(r->k_hi) + "," + std::to_string(r->paired) + "," +
                format_double(r->max_scaled_drift) + "," + format_double(r->worst_k) + "," +
                std::to_string(r->unpaired.size()) + "\n";
      emit(cfg, text, out);
    } else {
      emit(cfg, drift_comparison_to_json(cmp).dump(2) + "\n", out);
    }
    converged = cmp.first.converged && cmp.second.converged;
    pass = cmp.pass();
  } else {
    throw ConfigError("verify needs --coupling po (theorem envelopes) or delta (Kirchhoff drift)");
  }
  if (!converged) return kExitNotConverged;
  return pass ? kExitOk : kExitVerifyFailed;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.coupling2.empty()) throw ConfigError("compare needs --coupling2");
  const auto opts = window_options(cfg);
  const auto s1 = scan_spectrum(load_system(cfg, cfg.coupling, cfg.alpha, false), opts);
  const auto s2 = scan_spectrum(load_system(cfg, cfg.coupling2, cfg.alpha2, false), opts);
  warn_rejections(s1, err);
  warn_rejections(s2, err);

  json rows = json::array();
  std::string text = "k1,m1,k2,m2,abs_diff\n";
  for (const auto& a : s1.eigenvalues) {
    const Eigenvalue* best = nullptr;
    for (const auto& b : s2.eigenvalues)
      if (!best || std::abs(b.k - a.k) < std::abs(best->k - a.k)) best = &b;
    if (best) {
      const double d = std::abs(best->k - a.k);
      text += format_double(a.k) + "," + std::to_string(a.multiplicity) + "," + format_double(best->k) + "," +
              std::to_string(best->multiplicity) + "," + format_double(d) + "\n";
      rows.push_back({{"k1", a.k}, {"m1", a.multiplicity}, {"k2", best->k}, {"m2", best->multiplicity}, {"abs_diff", d}});
    } else {
      text += format_double(a.k) + "," + std::to_string(a.multiplicity) + ",,,\n";
      rows.push_back({{"k1", a.k}, {"m1", a.multiplicity}, {"k2", nullptr}, {"m2", nullptr}, {"abs_diff", nullptr}});
    }
  }
  emit(cfg, cfg.format == "json" ? json{{"window", {opts.k_min, opts.k_max}}, {"pairs", rows}}.dump(2) + "\n" : text,
       out);
  return s1.converged() && s2.converged() ? kExitOk : kExitNotConverged;
}

int cmd_oracles(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Solid solid = require_solid(cfg);
  const auto opts = window_options(cfg);
  const auto spec = coupling_from_flags(cfg.coupling, cfg.alpha);
  OracleCoupling oc;
  if (spec.kind == CouplingSpec::Kind::PreferredOrientation)
    oc = OracleCoupling::PreferredOrientation;
  else if (spec.kind == CouplingSpec::Kind::Delta)
    oc = OracleCoupling::Delta;
  else
    throw ConfigError("oracles exist for po and delta couplings only");
  OracleRoute route;
  if (cfg.route == "closed-form")
    route = OracleRoute::ClosedForm;
  else if (cfg.route == "component")
    route = OracleRoute::ComponentOperator;
  else
    throw ConfigError("--route must be closed-form or component");
  if (route == OracleRoute::ClosedForm && !closed_form_is_exact(solid, oc))
    err << "note: this closed form keeps only the leading terms in 1/k; use --route component for exact roots\n";
  const auto spectrum = oracle_union_spectrum(solid, oc, spec.alpha, opts, route);
  emit(cfg, render_spectrum(cfg, spectrum), out);
  return kExitOk;
}

int cmd_export(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.format != "json") throw ConfigError("export writes JSON only");
  const auto system = load_system(cfg, cfg.coupling, cfg.alpha, true);
  json couplings = json::array();
  for (const auto& c : system.couplings()) {
    CouplingSpec s;
    s.kind = CouplingSpec::Kind::Custom;
    s.matrix = c.matrix();
    couplings.push_back(coupling_spec_to_json(s)["matrix"]);
  }
  json doc = {{"graph", graph_to_json(system.graph())}, {"couplings", std::move(couplings)}};
  if (cfg.export_k > 0.0) {
    const CMatrix m = assemble(system, cfg.export_k);
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
      rows.push_back(std::move(row));
    }
    doc["k"] = cfg.export_k;
    doc["secular_matrix"] = std::move(rows);
  }
  emit(cfg, doc.dump(2) + "\n", out);
  return kExitOk;
}

// Turns a JSON config object into "--key=value" arguments placed before the
// command-line ones, so that explicit flags win.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ConfigError("--config needs a file");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (path.empty()) return rest;

  const json cfg = read_json_file(path);
  if (!cfg.is_object()) throw ConfigError("config file must hold a JSON object");
  std::vector<std::string> flags;
  std::string command;
  for (const auto& [key, value] : cfg.items()) {
    if (key == "command") {
      if (!value.is_string()) throw ConfigError("config 'command' must be a string");
      command = value.get<std::string>();
      continue;
    }
    std::string text;
    if (value.is_string())
      text = value.get<std::string>();
    else if (value.is_number_integer())
      text = std::to_string(value.get<long long>());
    else if (value.is_number())
      text = format_double(value.get<double>());
    else
      throw ConfigError("config value for '" + key + "' must be a string or number");
    std::string flag = key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    flags.push_back("--" + flag + "=" + text);
  }
  std::vector<std::string> out;
  const bool has_command = !rest.empty() && rest.front().rfind("-", 0) != 0;
  if (has_command) {
    out.push_back(rest.front());
    rest.erase(rest.begin());
  } else if (!command.empty()) {
    out.push_back(command);
  }
  out.insert(out.end(), flags.begin(), flags.end());
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--solid", cfg.solid, "tetrahedron|cube|octahedron|dodecahedron|icosahedron");
  sub->add_option("--graph-file", cfg.graph_file, "graph JSON instead of --solid");
  sub->add_option("--coupling", cfg.coupling, "po|delta|kirchhoff|dirichlet|neumann|robin");
  sub->add_option("--alpha", cfg.alpha, "delta strength (robin constant for robin)");
  sub->add_option("--coupling-file", cfg.coupling_file, "per-vertex couplings (JSON)");
  sub->add_option("--kmin", cfg.k_min, "window start");
  sub->add_option("--kmax", cfg.k_max, "window end");
  sub->add_option("--window", cfg.window, "window as a:b (overrides --kmin/--kmax)");
  sub->add_option("--scan-step", cfg.opts.scan_step, "coarse scan step");
  sub->add_option("--tol-accept", cfg.opts.tol_accept, "accept a root when sigma_min <= this");
  sub->add_option("--promote-tol", cfg.opts.promote_tol, "minima above this are spurious");
  sub->add_option("--merge-tol", cfg.opts.merge_tol, "roots closer than this are merged");
  sub->add_option("--max-refine-iters", cfg.opts.max_refine_iters, "golden-section iteration cap");
  sub->add_option("--threads", cfg.opts.threads, "worker threads (0 = all; PLATOSPEC_THREADS caps)");
  sub->add_option("--format", cfg.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--output,-o", cfg.output, "output file (default stdout)");
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Spectra of quantum graphs on the Platonic solids", "platospec"};
  app.footer("--config FILE reads options from a JSON object (keys as flag names, plus \"command\"); flags given on the command line win.");
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues k on a window");
  auto* verify = app.add_subcommand("verify", "theorem envelopes (po) or Kirchhoff drift (delta)");
  auto* compare = app.add_subcommand("compare", "pair the spectra of two couplings");
  auto* oracles = app.add_subcommand("oracles", "union of the symmetry-sector spectra");
  auto* exporter = app.add_subcommand("export", "graph, couplings and optionally M(k) as JSON");
  for (auto* sub : {spectrum, verify, compare, oracles, exporter}) add_common(sub, cfg);
  spectrum->add_option("--emit-plot-data", cfg.plot_data, "write k, dist(k, n pi) columns to this file");
  verify->add_option("--window2", cfg.window2, "second drift window a:b (default 4a:4a+(b-a))");
  compare->add_option("--coupling2", cfg.coupling2, "second coupling");
  compare->add_option("--alpha2", cfg.alpha2, "second delta strength");
  oracles->add_option("--route", cfg.route, "closed-form|component");
  exporter->add_option("--k", cfg.export_k, "also write M(k) at this k");

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    if (spectrum->parsed()) {
      cfg.command = "spectrum";
      return cmd_spectrum(cfg, out, err);
    }
    if (verify->parsed()) {
      cfg.command = "verify";
      cfg.format = verify->count("--format") ? cfg.format : "json";
      return cmd_verify(cfg, out, err);
    }
    if (compare->parsed()) {
      cfg.command = "compare";
      return cmd_compare(cfg, out, err);
    }
    if (oracles->parsed()) {
      cfg.command = "oracles";
      return cmd_oracles(cfg, out, err);
    }
    cfg.command = "export";
    cfg.format = exporter->count("--format") ? cfg.format : "json";
    return cmd_export(cfg, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

}  // namespace platospec
