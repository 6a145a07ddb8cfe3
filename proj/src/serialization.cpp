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

#include "ontoscope/serialization.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <memory>
#include <sstream>
#include <utility>

#include "ontoscope/errors.hpp"
#include "ontoscope/quantum.hpp"

namespace ontoscope::io {

using nlohmann::json;

namespace {

constexpr double kStateNormSlack = 1e-6;

const json& require_field(const json& j, const char* key, const char* context) {
    const auto it = j.find(key);
    if (it == j.end()) {
        throw ValidationError(std::string(context) + ": missing field '" + key + "'");
    }
    return *it;
}

std::string csv_cell(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) {
        return value;
    }
    std::string quoted = "\"";
    for (char c : value) {
        if (c == '"') {
            quoted += '"';
        }
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::vector<std::vector<std::size_t>> index_rows(const json& j, const char* key,
                                                 const char* context) {
    const json& rows = require_field(j, key, context);
    if (!rows.is_array()) {
        throw ValidationError(std::string(context) + ": '" + key +
                              "' must be an array of index lists");
    }
    std::vector<std::vector<std::size_t>> out;
    for (const auto& row : rows) {
        if (!row.is_array()) {
            throw ValidationError(std::string(context) + ": '" + key +
                                  "' rows must be index lists");
        }
        std::vector<std::size_t> indices;
        for (const auto& v : row) {
            // Parsed files store nonnegative literals as unsigned, but
            // programmatic callers may hand over signed integer values.
            const bool nonnegative_integer =
                v.is_number_unsigned() ||
                (v.is_number_integer() && v.get<std::int64_t>() >= 0);
            if (!nonnegative_integer) {
                throw ValidationError(std::string(context) + ": '" + key +
                                      "' entries must be nonnegative integers");
            }
            indices.push_back(v.get<std::size_t>());
        }
        out.push_back(std::move(indices));
    }
    return out;
}

std::vector<double> double_array(const json& j, const char* context) {
    if (!j.is_array()) {
        throw ValidationError(std::string(context) + " must be an array of numbers");
    }
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) {
            throw ValidationError(std::string(context) + " must contain only numbers");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

} // namespace

std::string format_double(double value) {
    std::array<char, 64> buffer{};
    const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return std::string(buffer.data(), result.ptr);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open " + path, 0, 0);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot open " + path + " for writing");
    }
    out << content;
    if (!out) {
        throw ValidationError("failed writing " + path);
    }
}

nlohmann::json parse_json_file(const std::string& path) {
    const std::string text = read_text_file(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // nlohmann reports a byte offset; recover line and column for the
        // diagnostic the CLI prints.
        std::size_t line = 1;
        std::size_t column = 1;
        const std::size_t stop = e.byte == 0 ? 0 : std::min(e.byte - 1, text.size());
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ParseError(path + ": invalid JSON: " + e.what(), line, column);
    }
}

ScenarioFile scenario_from_json(const nlohmann::json& j,
                                std::optional<std::size_t> grid_size_override) {
    const char* ctx = "scenario";
    if (!j.is_object()) {
        throw ValidationError("scenario file must hold a JSON object");
    }
    const json& dim_field = require_field(j, "dim", ctx);
    if (!dim_field.is_number_integer()) {
        throw ValidationError("scenario: 'dim' must be an integer");
    }
    const int dim = dim_field.get<int>();

    std::size_t grid_size = models::kDefaultGridSize;
    if (const auto it = j.find("grid_size"); it != j.end()) {
        if (!it->is_number_unsigned()) {
            throw ValidationError("scenario: 'grid_size' must be a positive integer");
        }
        grid_size = it->get<std::size_t>();
    }
    if (grid_size_override.has_value()) {
        grid_size = *grid_size_override;
    }

    const json& states_field = require_field(j, "states", ctx);
    if (!states_field.is_array()) {
        throw ValidationError("scenario: 'states' must be an array");
    }
    std::vector<models::LabeledState> states;
    for (const auto& entry : states_field) {
        const json& label_field = require_field(entry, "label", "scenario state");
        if (!label_field.is_string()) {
            throw ValidationError("scenario: state labels must be strings");
        }
        const std::string label = label_field.get<std::string>();
        const json& amps = require_field(entry, "amplitudes", "scenario state");
        if (!amps.is_array() || amps.empty()) {
            throw ValidationError("scenario: state " + label +
                                  " needs a nonempty 'amplitudes' array");
        }
        std::vector<std::complex<double>> amplitudes;
        for (const auto& pair : amps) {
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
                !pair[1].is_number()) {
                throw ValidationError("scenario: amplitudes of " + label +
                                      " must be [re, im] pairs");
            }
            amplitudes.emplace_back(pair[0].get<double>(), pair[1].get<double>());
        }
        double norm_sq = 0.0;
        for (const auto& a : amplitudes) {
            norm_sq += std::norm(a);
        }
        if (std::abs(std::sqrt(norm_sq) - 1.0) > kStateNormSlack) {
            throw ValidationError("scenario: state " + label + " is not normalized");
        }
        states.push_back({label, quantum::StateVector::normalized(std::move(amplitudes))});
    }

    ScenarioFile file{models::Scenario(dim, std::move(states), grid_size), std::nullopt, {}};

    if (const auto it = j.find("preparation"); it != j.end()) {
        if (!it->is_string()) {
            throw ValidationError("scenario: 'preparation' must be a state label");
        }
        file.preparation = it->get<std::string>();
        if (!file.scenario.has_label(*file.preparation)) {
            throw ValidationError("scenario: unknown preparation label " + *file.preparation);
        }
    }
    if (const auto it = j.find("observable"); it != j.end()) {
        if (!it->is_array() || it->empty()) {
            throw ValidationError("scenario: 'observable' must be a nonempty label array");
        }
        for (const auto& entry : *it) {
            if (!entry.is_string()) {
                throw ValidationError("scenario: observable entries must be state labels");
            }
            const std::string label = entry.get<std::string>();
            if (!file.scenario.has_label(label)) {
                throw ValidationError("scenario: unknown observable label " + label);
            }
            file.observable.push_back(label);
        }
    }
    return file;
}

nlohmann::json scenario_to_json(const ScenarioFile& file) {
    json j;
    j["dim"] = file.scenario.dim();
    j["grid_size"] = file.scenario.grid_size();
    json states = json::array();
    for (const auto& entry : file.scenario.states()) {
        json amps = json::array();
        for (const auto& a : entry.state.amplitudes()) {
            amps.push_back(json::array({a.real(), a.imag()}));
        }
        states.push_back(json{{"label", entry.label}, {"amplitudes", std::move(amps)}});
    }
    j["states"] = std::move(states);
    if (file.preparation.has_value()) {
        j["preparation"] = *file.preparation;
    }
    if (!file.observable.empty()) {
        j["observable"] = file.observable;
    }
    return j;
}

PatternSpec pattern_from_json(const nlohmann::json& j) {
    const char* ctx = "pattern";
    if (!j.is_object()) {
        throw ValidationError("pattern file must hold a JSON object");
    }
    PatternSpec spec;
    spec.allowed_support = index_rows(j, "allowed_support", ctx);
    spec.required_core = index_rows(j, "required_core", ctx);
    if (const auto it = j.find("n_points"); it != j.end()) {
        const bool positive_integer =
            (it->is_number_unsigned() && it->get<std::uint64_t>() > 0) ||
            (it->is_number_integer() && it->get<std::int64_t>() > 0);
        if (!positive_integer) {
            throw ValidationError("pattern: 'n_points' must be a positive integer");
        }
        spec.n_points = it->get<std::size_t>();
    }
    return spec;
}

nlohmann::json pattern_to_json(const models::SupportPattern& pattern) {
    const auto rows_to_json = [](const std::vector<std::vector<bool>>& rows) {
        json out = json::array();
        for (const auto& row : rows) {
            json indices = json::array();
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (row[i]) {
                    indices.push_back(i);
                }
            }
            out.push_back(std::move(indices));
        }
        return out;
    };
    json j;
    j["allowed_support"] = rows_to_json(pattern.allowed_support);
    j["required_core"] = rows_to_json(pattern.required_core);
    if (!pattern.allowed_support.empty()) {
        j["n_points"] = pattern.allowed_support.front().size();
    }
    return j;
}

models::SupportPattern expand_pattern(const PatternSpec& spec, std::size_t n_states,
                                      std::size_t n_points) {
    if (spec.allowed_support.size() != n_states || spec.required_core.size() != n_states) {
        throw ValidationError("pattern must have one row per scenario state");
    }
    const auto expand = [n_points](const std::vector<std::vector<std::size_t>>& rows) {
        std::vector<std::vector<bool>> out(rows.size(), std::vector<bool>(n_points, false));
        for (std::size_t r = 0; r < rows.size(); ++r) {
            for (std::size_t i : rows[r]) {
                if (i >= n_points) {
                    throw ValidationError("pattern index out of range");
                }
                out[r][i] = true;
            }
        }
        return out;
    };
    models::SupportPattern pattern;
    pattern.allowed_support = expand(spec.allowed_support);
    pattern.required_core = expand(spec.required_core);
    pattern.validate(n_states, n_points);
    return pattern;
}

ontic::OntologicalModel model_from_json(const nlohmann::json& j,
                                        std::optional<ontic::ToleranceConfig> tolerances,
                                        std::string name) {
    const char* ctx = "model";
    if (!j.is_object()) {
        throw ValidationError("model file must hold a JSON object");
    }
    const json& kind_field = require_field(j, "kind", ctx);
    if (!kind_field.is_string()) {
        throw ValidationError("model: 'kind' must be \"grid\" or \"atomic\"");
    }
    const std::string kind = kind_field.get<std::string>();
    const json& dim_field = require_field(j, "dim", ctx);
    if (!dim_field.is_number_integer()) {
        throw ValidationError("model: 'dim' must be an integer");
    }
    const int dim = dim_field.get<int>();
    const json& points = require_field(j, "points", ctx);
    if (!points.is_array() || points.empty()) {
        throw ValidationError("model: 'points' must be a nonempty array");
    }

    std::shared_ptr<const ontic::OnticSpace> space;
    if (kind == "grid") {
        std::vector<std::array<double, 3>> coords;
        for (const auto& p : points) {
            if (!p.is_array() || p.size() != 3 || !p[0].is_number() || !p[1].is_number() ||
                !p[2].is_number()) {
                throw ValidationError("model: grid points must be [x, y, z] triples");
            }
            coords.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
        }
        std::vector<double> weights =
            double_array(require_field(j, "weights", ctx), "model: 'weights'");
        // The file is trusted to carry a consistent quadrature, so the total
        // measure is taken from the weights themselves.
        double total = 0.0;
        for (double w : weights) {
            total += w;
        }
        space = std::make_shared<const ontic::OnticSpace>(
            ontic::OnticSpace::sphere_grid(std::move(coords), std::move(weights), total));
    } else if (kind == "atomic") {
        std::vector<std::string> labels;
        for (const auto& p : points) {
            if (!p.is_string()) {
                throw ValidationError("model: atomic points must be label strings");
            }
            labels.push_back(p.get<std::string>());
        }
        if (const auto it = j.find("weights"); it != j.end()) {
            for (const double w : double_array(*it, "model: 'weights'")) {
                if (w != 1.0) {
                    throw ValidationError("model: atomic weights must all be 1");
                }
            }
        }
        space = std::make_shared<const ontic::OnticSpace>(
            ontic::OnticSpace::atomic(std::move(labels)));
    } else {
        throw ValidationError("model: unknown kind '" + kind + "'");
    }

    const json& preps = require_field(j, "preparations", ctx);
    const json& resps = require_field(j, "responses", ctx);
    if (!preps.is_object() || preps.empty() || !resps.is_object()) {
        throw ValidationError("model: 'preparations' and 'responses' must be label maps");
    }
    std::vector<ontic::EpistemicState> preparations;
    for (const auto& [label, densities] : preps.items()) {
        preparations.emplace_back(space, label,
                                  double_array(densities, "model: preparation densities"));
    }
    std::vector<ontic::ResponseFunction> responses;
    for (const auto& [label, values] : resps.items()) {
        responses.push_back(ontic::ResponseFunction::filter(
            space, label, double_array(values, "model: response values")));
    }

    const auto tol = tolerances.has_value()
                         ? *tolerances
                         : (space->kind() == ontic::OnticSpace::Kind::atomic
                                ? ontic::ToleranceConfig::atomic_defaults()
                                : ontic::ToleranceConfig::grid_defaults());
    return ontic::OntologicalModel(std::move(name), dim, std::move(space),
                                   std::move(preparations), std::move(responses), tol);
}

nlohmann::json model_to_json(const ontic::OntologicalModel& model) {
    const auto& space = *model.space();
    json j;
    j["dim"] = model.dim();
    if (space.kind() == ontic::OnticSpace::Kind::grid) {
        j["kind"] = "grid";
        json points = json::array();
        for (const auto& p : space.grid_points()) {
            points.push_back(json::array({p[0], p[1], p[2]}));
        }
        j["points"] = std::move(points);
    } else {
        j["kind"] = "atomic";
        j["points"] = space.atom_labels();
    }
    j["weights"] = space.weights();
    json preps = json::object();
    json resps = json::object();
    for (const auto& label : model.labels()) {
        preps[label] = model.preparation(label).densities();
        resps[label] = model.response(label).pass_values();
    }
    j["preparations"] = std::move(preps);
    j["responses"] = std::move(resps);
    return j;
}

nlohmann::json report_to_json(const audit::AuditReport& report) {
    json j;
    j["model"] = report.model;
    j["dim"] = report.dim;
    j["flags"] = json{{"certainty_all", report.flags.certainty_all},
                      {"reciprocal_all", report.flags.reciprocal_all},
                      {"deterministic_all", report.flags.deterministic_all},
                      {"classification_consistent", report.flags.classification_consistent}};
    j["classification"] = audit::to_string(report.classification);
    j["bound_constant"] = report.bound_constant;
    j["omega_d_bound"] = report.omega_d_bound;
    json pairs = json::array();
    for (const auto& pair : report.pairs) {
        json p;
        p["psi"] = pair.psi_label;
        p["phi"] = pair.phi_label;
        p["i_q"] = pair.i_q;
        p["omega"] = pair.omega.has_value() ? json(*pair.omega) : json(nullptr);
        p["i_ont"] = pair.i_ont;
        p["born_residual"] = pair.born_residual;
        p["decomposition_residual"] = pair.decomposition_residual;
        p["identity_residual"] =
            pair.identity_residual.has_value() ? json(*pair.identity_residual) : json(nullptr);
        p["lambda_r_size"] = pair.lambda_r_size;
        pairs.push_back(std::move(p));
    }
    j["pairs"] = std::move(pairs);
    j["tolerances"] = json{{"eps_support", report.tolerances.eps_support},
                           {"eps_core", report.tolerances.eps_core},
                           {"eps_residual", report.tolerances.eps_residual}};
    j["notes"] = report.notes;
    return j;
}

std::string report_to_csv(const audit::AuditReport& report) {
    std::string out = "psi,phi,i_q,omega,i_ont,born_residual,decomposition_residual,"
                      "identity_residual,lambda_r_size\n";
    for (const auto& pair : report.pairs) {
        out += csv_cell(pair.psi_label);
        out += ',';
        out += csv_cell(pair.phi_label);
        out += ',';
        out += format_double(pair.i_q);
        out += ',';
        if (pair.omega.has_value()) {
            out += format_double(*pair.omega);
        }
        out += ',';
        out += format_double(pair.i_ont);
        out += ',';
        out += format_double(pair.born_residual);
        out += ',';
        out += format_double(pair.decomposition_residual);
        out += ',';
        if (pair.identity_residual.has_value()) {
            out += format_double(*pair.identity_residual);
        }
        out += ',';
        out += std::to_string(pair.lambda_r_size);
        out += '\n';
    }
    return out;
}

} // namespace ontoscope::io
