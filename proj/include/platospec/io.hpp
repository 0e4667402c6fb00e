#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "platospec/asymptotics.hpp"
#include "platospec/coupling.hpp"
#include "platospec/graph.hpp"
#include "platospec/rootfind.hpp"

namespace platospec {

/// Malformed input files or inconsistent options (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// "%.17g"
std::string format_double(double x);

/// Header "k,multiplicity,residual", one row per eigenvalue.
std::string spectrum_to_csv(const Spectrum& spectrum);
nlohmann::json spectrum_to_json(const Spectrum& spectrum);
/// Parsers throw ConfigError on malformed input.
Spectrum spectrum_from_csv(std::string_view text);
Spectrum spectrum_from_json(const nlohmann::json& j);

/// {"edge_count": N, "vertices": [{"id": v, "ends": [{"edge": e, "end": 0|1}, ...]}, ...]}
nlohmann::json graph_to_json(const MetricGraph& graph);
/// Also accepts "end": "zero"/"one". Throws ConfigError, including when validation fails.
MetricGraph graph_from_json(const nlohmann::json& j);

/// A coupling description: {"kind": "delta", "alpha": 1.0}, {"kind": "po"},
/// {"kind": "robin", "robin": c} (or "alpha": c), {"kind": "custom", "matrix": [[re or [re, im], ...], ...]}.
CouplingSpec coupling_spec_from_json(const nlohmann::json& j);
nlohmann::json coupling_spec_to_json(const CouplingSpec& spec);
/// {"default": <spec>, "vertices": {"<id>": <spec>, ...}}
CouplingAssignment coupling_assignment_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const AsymptoticReport& report);
nlohmann::json drift_to_json(const DriftReport& report);
nlohmann::json drift_comparison_to_json(const DriftComparison& cmp);

/// Whole-file helpers; read errors raise ConfigError.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
nlohmann::json read_json_file(const std::string& path);
/// Picks CSV or JSON by extension (".csv" / ".json"), falling back to content sniffing.
Spectrum read_spectrum_file(const std::string& path);

}  // namespace platospec
