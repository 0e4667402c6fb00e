#include "platospec/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace platospec {

using nlohmann::json;

namespace {

double parse_double(std::string_view s, const char* what) {
  std::string str(s);
  char* end = nullptr;
  const double v = std::strtod(str.c_str(), &end);
  if (str.empty() || end != str.c_str() + str.size())
    throw ConfigError(std::string("bad ") + what + " value '" + str + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <class T>
T get_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad field '") + key + "': " + e.what());
  }
}

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError("complex entries must be numbers or [re, im] pairs");
}

json target_to_json(const TargetResult& t) {
  return {{"name", t.target.name},
          {"lattice", t.target.lattice.label()},
          {"constant", t.target.envelope.constant},
          {"slack", t.target.envelope.slack},
          {"max_scaled_dist", t.max_scaled_dist},
          {"worst_k", t.worst_k},
          {"count", t.count},
          {"multiplicity", t.total_multiplicity},
          {"required_multiplicity", t.target.required_multiplicity},
          {"pass", t.pass},
          {"offenders", t.offenders}};
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string spectrum_to_csv(const Spectrum& spectrum) {
  std::string out = "k,multiplicity,residual\n";
  for (const auto& ev : spectrum.eigenvalues)
    out += format_double(ev.k) + "," + std::to_string(ev.multiplicity) + "," + format_double(ev.residual) + "\n";
  return out;
}

Spectrum spectrum_from_csv(std::string_view text) {
  Spectrum spec;
  bool header = true;
  for (auto line : split(text, '\n')) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto cells = split(line, ',');
    if (header) {
      header = false;
      if (cells.size() < 3 || trim(cells[0]) != "k" || trim(cells[1]) != "multiplicity")
        throw ConfigError("spectrum CSV must start with header k,multiplicity,residual");
      continue;
    }
    if (cells.size() < 3) throw ConfigError("spectrum CSV row needs three columns");
    Eigenvalue ev;
    ev.k = parse_double(trim(cells[0]), "k");
    const double m = parse_double(trim(cells[1]), "multiplicity");
    if (m < 1 || m != static_cast<int>(m)) throw ConfigError("multiplicity must be a positive integer");
    ev.multiplicity = static_cast<int>(m);
    ev.residual = parse_double(trim(cells[2]), "residual");
    ev.k_lo = ev.k_hi = ev.k;
    spec.eigenvalues.push_back(ev);
  }
  if (header) throw ConfigError("empty spectrum CSV");
  if (!spec.eigenvalues.empty()) {
    spec.k_min = spec.eigenvalues.front().k;
    spec.k_max = spec.eigenvalues.back().k;
  }
  return spec;
}

json spectrum_to_json(const Spectrum& spectrum) {
  json evs = json::array();
  for (const auto& ev : spectrum.eigenvalues) {
    json e = {{"k", ev.k},       {"multiplicity", ev.multiplicity}, {"residual", ev.residual},
              {"k_lo", ev.k_lo}, {"k_hi", ev.k_hi},                 {"cluster", ev.cluster}};
    if (ev.sector >= 0) e["sector"] = ev.sector;
    evs.push_back(std::move(e));
  }
  json rej = json::array();
  for (const auto& r : spectrum.rejected)
    rej.push_back({{"k", r.k},
                   {"sigma", r.sigma},
                   {"reason", r.reason == Rejection::Reason::NotConverged ? "not_converged" : "spurious"}});
  return {{"window", {spectrum.k_min, spectrum.k_max}},
          {"scan_step", spectrum.scan_step},
          {"refinements", spectrum.refinements},
          {"total_multiplicity", spectrum.total_multiplicity()},
          {"converged", spectrum.converged()},
          {"eigenvalues", std::move(evs)},
          {"rejected", std::move(rej)}};
}

Spectrum spectrum_from_json(const json& j) {
  Spectrum spec;
  try {
    const auto w = get_field<std::vector<double>>(j, "window");
    if (w.size() != 2) throw ConfigError("window must have two entries");
    spec.k_min = w[0];
    spec.k_max = w[1];
    if (j.contains("scan_step")) spec.scan_step = j.at("scan_step").get<double>();
    if (j.contains("refinements")) spec.refinements = j.at("refinements").get<int>();
    for (const auto& e : get_field<json>(j, "eigenvalues")) {
      Eigenvalue ev;
      ev.k = get_field<double>(e, "k");
      ev.multiplicity = get_field<int>(e, "multiplicity");
      ev.residual = get_field<double>(e, "residual");
      ev.k_lo = e.value("k_lo", ev.k);
      ev.k_hi = e.value("k_hi", ev.k);
      ev.cluster = e.value("cluster", false);
      ev.sector = e.value("sector", -1);
      if (ev.multiplicity < 1) throw ConfigError("multiplicity must be positive");
      spec.eigenvalues.push_back(ev);
    }
    if (j.contains("rejected")) {
      for (const auto& r : j.at("rejected")) {
        const auto reason = get_field<std::string>(r, "reason");
        spec.rejected.push_back({get_field<double>(r, "k"), get_field<double>(r, "sigma"),
                                 reason == "not_converged" ? Rejection::Reason::NotConverged
                                                           : Rejection::Reason::Spurious});
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad spectrum JSON: ") + e.what());
  }
  return spec;
}

json graph_to_json(const MetricGraph& graph) {
  json vs = json::array();
  for (const auto& v : graph.vertices()) {
    json ends = json::array();
    for (const auto& e : v.ends) ends.push_back({{"edge", e.edge}, {"end", e.end == EndSide::Zero ? 0 : 1}});
    vs.push_back({{"id", v.id}, {"ends", std::move(ends)}});
  }
  return {{"edge_count", graph.edge_count()}, {"vertices", std::move(vs)}};
}

MetricGraph graph_from_json(const json& j) {
  const int edges = get_field<int>(j, "edge_count");
  std::vector<Vertex> vertices;
  for (const auto& v : get_field<json>(j, "vertices")) {
    Vertex vx;
    vx.id = get_field<int>(v, "id");
    for (const auto& e : get_field<json>(v, "ends")) {
      EdgeEnd end;
      end.edge = get_field<int>(e, "edge");
      const auto& side = e.contains("end") ? e.at("end") : json();
      if (side == 0 || side == "zero")
        end.end = EndSide::Zero;
      else if (side == 1 || side == "one")
        end.end = EndSide::One;
      else
        throw ConfigError("edge end must be 0, 1, \"zero\" or \"one\"");
      vx.ends.push_back(end);
    }
    vertices.push_back(std::move(vx));
  }
  MetricGraph graph = [&] {
    try {
      return MetricGraph(std::move(vertices), edges);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("bad graph: ") + e.what());
    }
  }();
  const auto report = validate(graph);
  if (!report.ok()) {
    std::string msg = "invalid graph:";
    for (const auto& issue : report.issues) msg += " [" + issue.code + ": " + issue.detail + "]";
    throw ConfigError(msg);
  }
  return graph;
}

CouplingSpec coupling_spec_from_json(const json& j) {
  const auto kind = get_field<std::string>(j, "kind");
  if (kind == "custom") {
    const auto rows = get_field<json>(j, "matrix");
    if (!rows.is_array() || rows.empty()) throw ConfigError("custom coupling needs a non-empty matrix");
    const auto n = static_cast<Eigen::Index>(rows.size());
    CouplingSpec spec;
    spec.kind = CouplingSpec::Kind::Custom;
    spec.matrix.resize(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      if (!rows[r].is_array() || static_cast<Eigen::Index>(rows[r].size()) != n)
        throw ConfigError("custom coupling matrix must be square");
      for (Eigen::Index c = 0; c < n; ++c) spec.matrix(r, c) = complex_from_json(rows[r][c]);
    }
    if (unitarity_defect(spec.matrix) > 1e-10) throw ConfigError("custom coupling matrix is not unitary");
    return spec;
  }
  try {
    CouplingSpec spec = parse_coupling_kind(kind, j.value("alpha", 0.0));
    if (spec.kind == CouplingSpec::Kind::Robin && j.contains("robin")) spec.robin = complex_from_json(j.at("robin"));
    return spec;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad coupling: ") + e.what());
  }
}

json coupling_spec_to_json(const CouplingSpec& spec) {
  switch (spec.kind) {
    case CouplingSpec::Kind::Delta:
      return {{"kind", "delta"}, {"alpha", spec.alpha}};
    case CouplingSpec::Kind::PreferredOrientation:
      return {{"kind", "po"}};
    case CouplingSpec::Kind::Dirichlet:
      return {{"kind", "dirichlet"}};
    case CouplingSpec::Kind::Neumann:
      return {{"kind", "neumann"}};
    case CouplingSpec::Kind::Robin:
      return {{"kind", "robin"}, {"robin", {spec.robin.real(), spec.robin.imag()}}};
    case CouplingSpec::Kind::Custom: {
      json rows = json::array();
      for (Eigen::Index r = 0; r < spec.matrix.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < spec.matrix.cols(); ++c)
          row.push_back({spec.matrix(r, c).real(), spec.matrix(r, c).imag()});
        rows.push_back(std::move(row));
      }
      return {{"kind", "custom"}, {"matrix", std::move(rows)}};
    }
  }
  return {};
}

CouplingAssignment coupling_assignment_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("coupling file must hold a JSON object");
  CouplingAssignment a;
  if (j.contains("default")) a.fallback = coupling_spec_from_json(j.at("default"));
  if (j.contains("vertices")) {
    const auto& vs = j.at("vertices");
    if (!vs.is_object()) throw ConfigError("'vertices' must map vertex ids to couplings");
    for (const auto& [key, value] : vs.items()) {
      const double id = parse_double(key, "vertex id");
      if (id < 0 || id != static_cast<int>(id)) throw ConfigError("vertex ids must be non-negative integers");
      a.overrides[static_cast<int>(id)] = coupling_spec_from_json(value);
    }
  }
  return a;
}

json report_to_json(const AsymptoticReport& report) {
  json targets = json::array();
  for (const auto& t : report.targets) targets.push_back(target_to_json(t));
  json rest = json::array();
  for (const auto& t : report.restatements) rest.push_back(target_to_json(t));
  return {{"solid", std::string(to_string(report.solid))},
          {"window", {report.k_lo, report.k_hi}},
          {"eigenvalues", report.eigenvalue_count},
          {"total_multiplicity", report.total_multiplicity},
          {"converged", report.spectrum_converged},
          {"targets", std::move(targets)},
          {"k_sin_k", std::move(rest)},
          {"unassigned", report.unassigned},
          {"ambiguous", report.ambiguous},
          {"pass", report.pass()}};
}

json drift_to_json(const DriftReport& r) {
  return {{"solid", std::string(to_string(r.solid))},
          {"alpha", r.alpha},
          {"window", {r.k_lo, r.k_hi}},
          {"paired", r.paired},
          {"max_scaled_drift", r.max_scaled_drift},
          {"worst_k", r.worst_k},
          {"unpaired", r.unpaired},
          {"converged", r.converged},
          {"pass", r.pass()}};
}

json drift_comparison_to_json(const DriftComparison& cmp) {
  return {{"first", drift_to_json(cmp.first)},
          {"second", drift_to_json(cmp.second)},
          {"ratio", cmp.ratio},
          {"max_ratio", cmp.max_ratio},
          {"pass", cmp.pass()}};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ConfigError("write to '" + path + "' failed");
}

json read_json_file(const std::string& path) {
  const auto text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

Spectrum read_spectrum_file(const std::string& path) {
  const auto text = read_text_file(path);
  const auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() && path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  bool is_json = ends_with(".json");
  if (!is_json && !ends_with(".csv")) {
    const auto first = text.find_first_not_of(" \t\r\n");
    is_json = first != std::string::npos && text[first] == '{';
  }
  if (!is_json) return spectrum_from_csv(text);
  try {
    return spectrum_from_json(json::parse(text));
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace platospec
