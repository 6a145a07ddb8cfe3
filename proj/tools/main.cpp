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

// ontoscope: build discretized ontological models of finite-dimensional
// quantum systems and audit them (Born reproduction, degree of epistemicity,
// ontological indeterminism, dimension bounds, randomness yield).
//
// Exit codes: 0 success; 1 usage, parse, or validation errors; 2 Born or
// certainty failures (including synthesis misses); 3 classification
// inconsistency (reciprocal AND deterministic must coincide with the
// maximally psi-epistemic classification).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ontoscope/audit.hpp"
#include "ontoscope/errors.hpp"
#include "ontoscope/models.hpp"
#include "ontoscope/ontic.hpp"
#include "ontoscope/quantum.hpp"
#include "ontoscope/serialization.hpp"

namespace {

using nlohmann::json;
using namespace ontoscope;

struct RunConfig {
    std::string command;
    std::string scenario_path;
    std::string model_spec = "ks-qubit";
    std::string model_file;
    std::string pattern_path;
    std::string output_path;
    std::string format = "json";
    std::size_t grid_size = 0; // 0: take it from the scenario file
    std::size_t n_points = 0;  // 0: infer from the pattern
    std::string objective = "feasibility";
    double eps_residual = -1.0; // negative: keep the model's default
    double eps_support = -1.0;
    double eps_core = -1.0;
    std::int64_t d_min = 2;
    std::int64_t d_max = 16;
};

bool has_tolerance_flags(const RunConfig& cfg) {
    return cfg.eps_residual >= 0.0 || cfg.eps_support >= 0.0 || cfg.eps_core >= 0.0;
}

ontic::ToleranceConfig apply_tolerance_flags(const RunConfig& cfg,
                                             ontic::ToleranceConfig base) {
    if (cfg.eps_residual >= 0.0) {
        base.eps_residual = cfg.eps_residual;
    }
    if (cfg.eps_support >= 0.0) {
        base.eps_support = cfg.eps_support;
    }
    if (cfg.eps_core >= 0.0) {
        base.eps_core = cfg.eps_core;
    }
    base.validate();
    return base;
}

// Models are immutable, so tolerance overrides rebuild the model around the
// same space and data.
ontic::OntologicalModel with_tolerances(const ontic::OntologicalModel& model,
                                        const ontic::ToleranceConfig& tolerances) {
    std::vector<ontic::EpistemicState> preparations;
    std::vector<ontic::ResponseFunction> responses;
    for (const auto& label : model.labels()) {
        preparations.push_back(model.preparation(label));
        responses.push_back(model.response(label));
    }
    return ontic::OntologicalModel(model.name(), model.dim(), model.space(),
                                   std::move(preparations), std::move(responses), tolerances);
}

io::ScenarioFile load_scenario(const RunConfig& cfg) {
    if (cfg.scenario_path.empty()) {
        throw ValidationError("a --scenario file is required");
    }
    std::optional<std::size_t> grid_override;
    if (cfg.grid_size > 0) {
        grid_override = cfg.grid_size;
    }
    return io::scenario_from_json(io::parse_json_file(cfg.scenario_path), grid_override);
}

models::SupportPattern load_pattern(const RunConfig& cfg, std::size_t n_states,
                                    std::size_t& n_points_out) {
    if (cfg.pattern_path.empty()) {
        throw ValidationError("this model requires a --pattern file");
    }
    const auto spec = io::pattern_from_json(io::parse_json_file(cfg.pattern_path));
    std::size_t n_points = cfg.n_points;
    if (n_points == 0 && spec.n_points.has_value()) {
        n_points = *spec.n_points;
    }
    if (n_points == 0) {
        for (const auto* rows : {&spec.allowed_support, &spec.required_core}) {
            for (const auto& row : *rows) {
                for (std::size_t i : row) {
                    n_points = std::max(n_points, i + 1);
                }
            }
        }
        n_points = std::max(n_points, n_states);
    }
    n_points_out = n_points;
    return io::expand_pattern(spec, n_states, n_points);
}

models::SynthesisObjective parse_objective(const std::string& name) {
    if (name == "feasibility") {
        return models::SynthesisObjective::feasibility;
    }
    if (name == "max-total-overlap") {
        return models::SynthesisObjective::max_total_overlap;
    }
    throw ValidationError("unknown synthesis objective: " + name);
}

models::SynthesisResult run_synthesis(const RunConfig& cfg, const models::Scenario& scenario) {
    std::size_t n_points = 0;
    const auto pattern = load_pattern(cfg, scenario.states().size(), n_points);
    models::SynthesisOptions options;
    if (cfg.eps_residual >= 0.0) {
        options.eps_residual = cfg.eps_residual;
    }
    return models::synthesize_model(scenario, n_points, pattern, parse_objective(cfg.objective),
                                    options);
}

ontic::OntologicalModel make_model(const RunConfig& cfg, const io::ScenarioFile& file) {
    if (cfg.model_spec == "file") {
        if (cfg.model_file.empty()) {
            throw ValidationError("--model file requires --model-file");
        }
        std::optional<ontic::ToleranceConfig> tolerances;
        const auto j = io::parse_json_file(cfg.model_file);
        if (has_tolerance_flags(cfg)) {
            const bool atomic = j.contains("kind") && j["kind"] == "atomic";
            tolerances = apply_tolerance_flags(
                cfg, atomic ? ontic::ToleranceConfig::atomic_defaults()
                            : ontic::ToleranceConfig::grid_defaults());
        }
        return io::model_from_json(j, tolerances);
    }

    auto build = [&]() -> ontic::OntologicalModel {
        if (cfg.model_spec == "ks-qubit") {
            return models::build_ks_qubit(file.scenario);
        }
        if (cfg.model_spec == "bb-ontic") {
            return models::build_bb_ontic(file.scenario);
        }
        if (cfg.model_spec == "synth") {
            return run_synthesis(cfg, file.scenario).model;
        }
        throw ValidationError("unknown model: " + cfg.model_spec);
    };
    auto model = build();
    if (has_tolerance_flags(cfg)) {
        return with_tolerances(model, apply_tolerance_flags(cfg, model.tolerances()));
    }
    return model;
}

// Report bodies are written verbatim; when a path is given the body goes to
// the file and stdout gets a one-line summary instead.
void emit(const RunConfig& cfg, const std::string& body, const std::string& summary) {
    if (cfg.output_path.empty()) {
        std::cout << body;
    } else {
        io::write_text_file(cfg.output_path, body);
        std::cout << summary << " -> " << cfg.output_path << "\n";
    }
}

int run_audit(const RunConfig& cfg) {
    const auto file = load_scenario(cfg);
    const auto model = make_model(cfg, file);
    const auto report = audit::classify(model, file.scenario);
    const std::string body = cfg.format == "csv"
                                 ? io::report_to_csv(report)
                                 : io::report_to_json(report).dump(2) + "\n";
    emit(cfg, body,
         "audit " + report.model + ": " + audit::to_string(report.classification));
    if (!report.flags.certainty_all) {
        std::cerr << "audit error: a preparation fails quantum certainty\n";
        return 2;
    }
    if (!report.flags.classification_consistent) {
        std::cerr << "audit error: reciprocal/deterministic flags contradict the "
                     "classification\n";
        return 3;
    }
    return 0;
}

int run_born_check(const RunConfig& cfg) {
    const auto file = load_scenario(cfg);
    const auto model = make_model(cfg, file);
    const auto labels = file.scenario.labels();
    json pairs = json::array();
    std::string csv = "psi,phi,expected,predicted,residual\n";
    double worst = 0.0;
    for (const auto& psi : labels) {
        for (const auto& phi : labels) {
            const double expected =
                quantum::born_probability(file.scenario.state(psi), file.scenario.state(phi));
            const double raw = model.predicted_probability(psi, phi);
            const double residual = std::abs(raw - expected);
            const double predicted = std::clamp(raw, 0.0, 1.0);
            worst = std::max(worst, residual);
            pairs.push_back(json{{"psi", psi},
                                 {"phi", phi},
                                 {"expected", expected},
                                 {"predicted", predicted},
                                 {"residual", residual}});
            csv += psi + ',' + phi + ',' + io::format_double(expected) + ',' +
                   io::format_double(predicted) + ',' + io::format_double(residual) + '\n';
        }
    }
    const double eps = model.tolerances().eps_residual;
    json j{{"model", model.name()},
           {"eps_residual", eps},
           {"worst_residual", worst},
           {"pairs", std::move(pairs)}};
    emit(cfg, cfg.format == "csv" ? csv : j.dump(2) + "\n",
         "born-check " + model.name() + ": worst residual " + io::format_double(worst));
    if (worst > eps) {
        std::cerr << "born-check error: worst residual " << worst << " exceeds " << eps << "\n";
        return 2;
    }
    return 0;
}

int run_omega(const RunConfig& cfg) {
    const auto file = load_scenario(cfg);
    const auto model = make_model(cfg, file);
    const auto labels = file.scenario.labels();
    json pairs = json::array();
    std::string csv = "psi,phi,i_q,omega\n";
    for (const auto& psi : labels) {
        for (const auto& phi : labels) {
            if (psi == phi) {
                continue;
            }
            const double iq =
                quantum::born_probability(file.scenario.state(psi), file.scenario.state(phi));
            const auto value = audit::omega(model, file.scenario, psi, phi);
            pairs.push_back(json{{"psi", psi},
                                 {"phi", phi},
                                 {"i_q", iq},
                                 {"omega", value.has_value() ? json(*value) : json(nullptr)}});
            csv += psi + ',' + phi + ',' + io::format_double(iq) + ',' +
                   (value.has_value() ? io::format_double(*value) : std::string()) + '\n';
        }
    }
    json j{{"model", model.name()}, {"pairs", std::move(pairs)}};
    emit(cfg, cfg.format == "csv" ? csv : j.dump(2) + "\n", "omega " + model.name());
    return 0;
}

int run_randomness(const RunConfig& cfg) {
    const auto file = load_scenario(cfg);
    if (!file.preparation.has_value() || file.observable.empty()) {
        throw ValidationError(
            "randomness needs 'preparation' and 'observable' in the scenario file");
    }
    const auto& scenario = file.scenario;
    const auto& psi = scenario.state(*file.preparation);
    std::vector<quantum::StateVector> eigenstates;
    for (const auto& label : file.observable) {
        eigenstates.push_back(scenario.state(label));
    }
    const quantum::ProjectiveObservable obs(file.observable, std::move(eigenstates));
    if (!obs.is_complete()) {
        throw ValidationError("randomness needs a complete observable (one outcome per "
                              "dimension)");
    }

    const double guess = quantum::guessing_probability(psi, obs);
    const double entropy = quantum::min_entropy(psi, obs);
    double floor = 0.0;
    json outcomes = json::array();
    for (std::size_t k = 0; k < obs.outcome_count(); ++k) {
        const auto iq = quantum::i_quantum(psi, obs.eigenstate(k));
        if (iq.indeterministic) {
            floor = std::max(floor, audit::bound_constant(scenario.dim()) * iq.value);
        }
        outcomes.push_back(json{{"label", obs.outcome_label(k)},
                                {"probability", iq.value},
                                {"indeterministic", iq.indeterministic}});
    }

    json j{{"preparation", *file.preparation},
           {"guessing_probability", guess},
           {"min_entropy_bits", entropy},
           {"indeterminism_floor", floor},
           {"floor_description",
            "reciprocal-model indeterminism floor: bound_constant(dim) times the largest "
            "indeterministic outcome probability"},
           {"outcomes", std::move(outcomes)}};
    std::string csv = "preparation,guessing_probability,min_entropy_bits,indeterminism_floor\n" +
                      *file.preparation + ',' + io::format_double(guess) + ',' +
                      io::format_double(entropy) + ',' + io::format_double(floor) + '\n';
    emit(cfg, cfg.format == "csv" ? csv : j.dump(2) + "\n",
         "randomness " + *file.preparation + ": min-entropy " + io::format_double(entropy) +
             " bits");
    return 0;
}

int run_bounds(const RunConfig& cfg) {
    if (cfg.d_min < 2) {
        throw DomainError("--d-min must be at least 2");
    }
    if (cfg.d_max < cfg.d_min) {
        throw ValidationError("--d-max must not be below --d-min");
    }
    if (cfg.d_max - cfg.d_min >= 1000000) {
        throw ValidationError("bounds tables are capped at 1e6 rows");
    }
    json rows = json::array();
    std::string csv = "d,omega_d_bound,bound_constant\n";
    for (std::int64_t d = cfg.d_min; d <= cfg.d_max; ++d) {
        const double omega_bound = audit::maroney_omega_bound(d);
        const double constant = audit::bound_constant(d);
        rows.push_back(
            json{{"d", d}, {"omega_d_bound", omega_bound}, {"bound_constant", constant}});
        csv += std::to_string(d) + ',' + io::format_double(omega_bound) + ',' +
               io::format_double(constant) + '\n';
    }
    json j{{"rows", std::move(rows)}};
    emit(cfg, cfg.format == "csv" ? csv : j.dump(2) + "\n",
         "bounds d=" + std::to_string(cfg.d_min) + ".." + std::to_string(cfg.d_max));
    return 0;
}

int run_synth(const RunConfig& cfg) {
    const auto file = load_scenario(cfg);
    const auto result = run_synthesis(cfg, file.scenario);
    emit(cfg, io::model_to_json(result.model).dump(2) + "\n",
         "synth: residual " + io::format_double(result.max_born_residual) + " after " +
             std::to_string(result.iterations) + " iterations");
    std::cerr << "synth converged: residual " << result.max_born_residual << " after "
              << result.iterations << " iterations\n";
    return 0;
}

void add_model_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--model", cfg.model_spec, "Model to build: ks-qubit, bb-ontic, file, synth")
        ->check(CLI::IsMember({"ks-qubit", "bb-ontic", "file", "synth"}));
    cmd->add_option("--model-file", cfg.model_file, "Model JSON (with --model file)");
    cmd->add_option("--pattern", cfg.pattern_path, "Support pattern JSON (with --model synth)");
    cmd->add_option("--n-points", cfg.n_points, "Ontic points for synthesis");
    cmd->add_option("--objective", cfg.objective,
                    "Synthesis objective: feasibility or max-total-overlap")
        ->check(CLI::IsMember({"feasibility", "max-total-overlap"}));
}

void add_scenario_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--scenario", cfg.scenario_path, "Scenario JSON file")->required();
    cmd->add_option("--grid-size", cfg.grid_size, "Sphere-grid resolution override")
        ->check(CLI::Range(static_cast<std::size_t>(models::kMinGridSize),
                           std::numeric_limits<std::size_t>::max()));
}

void add_output_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--out", cfg.output_path, "Write the report here instead of stdout");
    cmd->add_option("--format", cfg.format, "Report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
}

void add_tolerance_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--eps-residual", cfg.eps_residual, "Residual tolerance override");
    cmd->add_option("--eps-support", cfg.eps_support, "Support threshold override");
    cmd->add_option("--eps-core", cfg.eps_core, "Core threshold override");
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"ontoscope: construct and audit discretized ontological models of "
                 "finite-dimensional quantum systems"};
    app.require_subcommand(1);

    CLI::App* audit_cmd = app.add_subcommand("audit", "Full model audit and classification");
    add_scenario_flags(audit_cmd, cfg);
    add_model_flags(audit_cmd, cfg);
    add_output_flags(audit_cmd, cfg);
    add_tolerance_flags(audit_cmd, cfg);

    CLI::App* born_cmd =
        app.add_subcommand("born-check", "Predicted vs Born probabilities per pair");
    add_scenario_flags(born_cmd, cfg);
    add_model_flags(born_cmd, cfg);
    add_output_flags(born_cmd, cfg);
    add_tolerance_flags(born_cmd, cfg);

    CLI::App* omega_cmd =
        app.add_subcommand("omega", "Degree of epistemicity per ordered pair");
    add_scenario_flags(omega_cmd, cfg);
    add_model_flags(omega_cmd, cfg);
    add_output_flags(omega_cmd, cfg);
    add_tolerance_flags(omega_cmd, cfg);

    CLI::App* rand_cmd = app.add_subcommand(
        "randomness", "Guessing probability, min-entropy, and the indeterminism floor");
    add_scenario_flags(rand_cmd, cfg);
    add_output_flags(rand_cmd, cfg);

    CLI::App* bounds_cmd =
        app.add_subcommand("bounds", "Dimension-bound table over a range of d");
    bounds_cmd->add_option("--d-min", cfg.d_min, "Smallest dimension (>= 2)");
    bounds_cmd->add_option("--d-max", cfg.d_max, "Largest dimension");
    add_output_flags(bounds_cmd, cfg);

    CLI::App* synth_cmd =
        app.add_subcommand("synth", "Synthesize an atomic model under a support pattern");
    add_scenario_flags(synth_cmd, cfg);
    synth_cmd->add_option("--pattern", cfg.pattern_path, "Support pattern JSON")->required();
    synth_cmd->add_option("--n-points", cfg.n_points, "Ontic points for synthesis");
    synth_cmd->add_option("--objective", cfg.objective,
                          "Synthesis objective: feasibility or max-total-overlap")
        ->check(CLI::IsMember({"feasibility", "max-total-overlap"}));
    synth_cmd->add_option("--out", cfg.output_path, "Write the model here instead of stdout");
    synth_cmd->add_option("--eps-residual", cfg.eps_residual,
                          "Convergence target for the worst Born residual");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (audit_cmd->parsed()) {
            return run_audit(cfg);
        }
        if (born_cmd->parsed()) {
            return run_born_check(cfg);
        }
        if (omega_cmd->parsed()) {
            return run_omega(cfg);
        }
        if (rand_cmd->parsed()) {
            return run_randomness(cfg);
        }
        if (bounds_cmd->parsed()) {
            return run_bounds(cfg);
        }
        if (synth_cmd->parsed()) {
            return run_synth(cfg);
        }
        std::cerr << "no command given\n";
        return 1;
    } catch (const BornViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CertaintyViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SynthesisFailure& e) {
        std::cerr << "error: " << e.what() << " (best residual " << e.best_residual() << ")\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << " (line " << e.line() << ", column " << e.column()
                  << ")\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
}
