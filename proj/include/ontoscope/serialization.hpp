// Copyright 2026 The Ontoscope Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * JSON and CSV interchange for scenarios, support patterns, models, and
 * audit reports.
 *
 * All writers are deterministic: identical inputs produce byte-identical
 * output, with no timestamps or environment-dependent content. Floats are
 * written in shortest round-trip form, so every value reparses to the exact
 * double that was serialized.
 */

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ontoscope/audit.hpp"
#include "ontoscope/models.hpp"
#include "ontoscope/ontic.hpp"

namespace ontoscope::io {

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double value);

/// Reads and parses a JSON file. Syntax errors surface as ParseError with
/// 1-based line and column; unreadable files as ParseError at line 0.
nlohmann::json parse_json_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// A scenario file: the state collection plus the optional designated
/// preparation and observable used by randomness analysis.
struct ScenarioFile {
    models::Scenario scenario;
    std::optional<std::string> preparation;
    std::vector<std::string> observable;
};

/// Layout: {"dim": int, "grid_size": int?, "states": [{"label": str,
/// "amplitudes": [[re, im], ...]}, ...], "preparation": str?,
/// "observable": [str, ...]?}. States must be normalized within 1e-6 and
/// are snapped to exact unit norm. grid_size_override wins over the file.
ScenarioFile scenario_from_json(const nlohmann::json& j,
                                std::optional<std::size_t> grid_size_override = std::nullopt);
nlohmann::json scenario_to_json(const ScenarioFile& file);

/// Support pattern rows as index lists, mirroring the boolean matrices:
/// {"allowed_support": [[i, ...], ...], "required_core": [[i, ...], ...],
/// "n_points": int?}.
struct PatternSpec {
    std::vector<std::vector<std::size_t>> allowed_support;
    std::vector<std::vector<std::size_t>> required_core;
    std::optional<std::size_t> n_points;
};

PatternSpec pattern_from_json(const nlohmann::json& j);
nlohmann::json pattern_to_json(const models::SupportPattern& pattern);

/// Expands index lists to the boolean matrices over n_points columns.
models::SupportPattern expand_pattern(const PatternSpec& spec, std::size_t n_states,
                                      std::size_t n_points);

/// Layout: {"kind": "grid"|"atomic", "dim": int, "points": [...],
/// "weights": [...], "preparations": {label: [densities]},
/// "responses": {label: [pass values]}}. Grid points are [x, y, z] triples,
/// atomic points are label strings. Responses hold the pass row of the
/// {label, "fail"} filter.
ontic::OntologicalModel model_from_json(
    const nlohmann::json& j, std::optional<ontic::ToleranceConfig> tolerances = std::nullopt,
    std::string name = "file");
nlohmann::json model_to_json(const ontic::OntologicalModel& model);

nlohmann::json report_to_json(const audit::AuditReport& report);
/// Flattens the pair list; columns psi, phi, i_q, omega, i_ont,
/// born_residual, decomposition_residual, identity_residual, lambda_r_size.
/// Undefined omega or identity_residual become empty cells.
std::string report_to_csv(const audit::AuditReport& report);

} // namespace ontoscope::io
