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

#include "ontoscope/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>
#include <utility>

#include "ontoscope/errors.hpp"
#include "ontoscope/lp.hpp"

namespace ontoscope::models {

Scenario::Scenario(int dim, std::vector<LabeledState> states, std::size_t grid_size)
    : dim_(dim), grid_size_(grid_size), states_(std::move(states)) {
    if (dim_ < 2) {
        throw DimensionError("scenario dimension must be at least 2");
    }
    if (states_.empty()) {
        throw ValidationError("scenario needs at least one state");
    }
    if (grid_size_ < kMinGridSize) {
        std::ostringstream oss;
        oss << "grid_size must be at least " << kMinGridSize;
        throw ValidationError(oss.str());
    }
    for (std::size_t i = 0; i < states_.size(); ++i) {
        const auto& entry = states_[i];
        if (entry.label.empty()) {
            throw ValidationError("scenario state labels must be nonempty");
        }
        if (entry.state.dim() != dim_) {
            throw DimensionError("state " + entry.label + " does not match the scenario dimension");
        }
        if (!index_.emplace(entry.label, i).second) {
            throw ValidationError("duplicate scenario label: " + entry.label);
        }
    }
}

std::vector<std::string> Scenario::labels() const {
    std::vector<std::string> out;
    out.reserve(states_.size());
    for (const auto& entry : states_) {
        out.push_back(entry.label);
    }
    return out;
}

bool Scenario::has_label(const std::string& label) const {
    return index_.find(label) != index_.end();
}

const quantum::StateVector& Scenario::state(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) {
        throw LookupError("unknown scenario label: " + label);
    }
    return states_[it->second].state;
}

std::array<double, 3> bloch_vector(const quantum::StateVector& state) {
    if (state.dim() != 2) {
        throw DimensionError("Bloch vectors exist only for two-level states");
    }
    const auto a = state.amplitudes()[0];
    const auto b = state.amplitudes()[1];
    const auto cross = std::conj(a) * b;
    return {2.0 * cross.real(), 2.0 * cross.imag(), std::norm(a) - std::norm(b)};
}

ontic::OntologicalModel build_ks_qubit(const Scenario& scenario) {
    if (scenario.dim() != 2) {
        throw UnsupportedDimension("the sphere-grid qubit model requires dimension 2");
    }
    auto space = std::make_shared<const ontic::OnticSpace>(
        ontic::fibonacci_sphere(scenario.grid_size()));
    const auto& points = space->grid_points();
    const auto& weights = space->weights();

    std::vector<ontic::EpistemicState> preparations;
    std::vector<ontic::ResponseFunction> responses;
    preparations.reserve(scenario.states().size());
    responses.reserve(scenario.states().size());
    for (const auto& entry : scenario.states()) {
        const auto axis = bloch_vector(entry.state);
        std::vector<double> density(points.size(), 0.0);
        std::vector<double> pass(points.size(), 0.0);
        double mass = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const double dot = axis[0] * points[i][0] + axis[1] * points[i][1] +
                               axis[2] * points[i][2];
            if (dot > 0.0) {
                density[i] = dot / std::numbers::pi;
                pass[i] = 1.0;
                mass += density[i] * weights[i];
            }
        }
        // Collocation leaves O(1/N) mass error; rescaling restores exact
        // normalization so self-pair probabilities are not biased by the grid.
        for (double& d : density) {
            d /= mass;
        }
        preparations.emplace_back(space, entry.label, std::move(density));
        responses.push_back(ontic::ResponseFunction::filter(space, entry.label, std::move(pass)));
    }
    return ontic::OntologicalModel("ks-qubit", 2, space, std::move(preparations),
                                   std::move(responses), ontic::ToleranceConfig::grid_defaults());
}

ontic::OntologicalModel build_bb_ontic(const Scenario& scenario) {
    const auto& states = scenario.states();
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (std::size_t j = i + 1; j < states.size(); ++j) {
            const double overlap = quantum::born_probability(states[i].state, states[j].state);
            if (overlap > 1.0 - kDuplicateRayTolerance) {
                throw ValidationError("labels " + states[i].label + " and " + states[j].label +
                                      " name the same ray");
            }
        }
    }
    auto space =
        std::make_shared<const ontic::OnticSpace>(ontic::OnticSpace::atomic(scenario.labels()));

    std::vector<ontic::EpistemicState> preparations;
    std::vector<ontic::ResponseFunction> responses;
    preparations.reserve(states.size());
    responses.reserve(states.size());
    for (std::size_t k = 0; k < states.size(); ++k) {
        std::vector<double> mass(states.size(), 0.0);
        mass[k] = 1.0;
        preparations.emplace_back(space, states[k].label, std::move(mass));

        std::vector<double> pass(states.size());
        for (std::size_t i = 0; i < states.size(); ++i) {
            // The diagonal is 1 by unit norm; writing it exactly keeps the
            // atomic arithmetic paths free of rounding.
            pass[i] = i == k ? 1.0
                             : quantum::born_probability(states[i].state, states[k].state);
        }
        responses.push_back(
            ontic::ResponseFunction::filter(space, states[k].label, std::move(pass)));
    }
    return ontic::OntologicalModel("bb-ontic", scenario.dim(), space, std::move(preparations),
                                   std::move(responses),
                                   ontic::ToleranceConfig::atomic_defaults());
}

SupportPattern SupportPattern::bb_style(std::size_t n_states) {
    SupportPattern pattern;
    pattern.allowed_support.assign(n_states, std::vector<bool>(n_states, false));
    pattern.required_core.assign(n_states, std::vector<bool>(n_states, false));
    for (std::size_t j = 0; j < n_states; ++j) {
        pattern.allowed_support[j][j] = true;
        pattern.required_core[j][j] = true;
    }
    return pattern;
}

void SupportPattern::validate(std::size_t n_states, std::size_t n_points) const {
    if (allowed_support.size() != n_states || required_core.size() != n_states) {
        throw ValidationError("support pattern must have one row per scenario state");
    }
    for (std::size_t j = 0; j < n_states; ++j) {
        if (allowed_support[j].size() != n_points || required_core[j].size() != n_points) {
            throw ValidationError("support pattern rows must have one entry per ontic point");
        }
        if (std::find(allowed_support[j].begin(), allowed_support[j].end(), true) ==
            allowed_support[j].end()) {
            throw ValidationError("every preparation needs at least one allowed point");
        }
        for (std::size_t i = 0; i < n_points; ++i) {
            if (required_core[j][i] && !allowed_support[j][i]) {
                throw ValidationError(
                    "required core points must be allowed for the same label");
            }
        }
    }
}

namespace {

// Shared scratch for the alternating synthesis stages.
struct SynthesisState {
    std::size_t n_states = 0;
    std::size_t n_points = 0;
    std::vector<std::vector<double>> born; // born[j][k] for preparation j, filter k
    std::vector<std::vector<double>> mu;   // mu[j][i]
    std::vector<std::vector<double>> xi;   // xi[k][i]
};

double worst_born_residual(const SynthesisState& st) {
    double worst = 0.0;
    for (std::size_t j = 0; j < st.n_states; ++j) {
        for (std::size_t k = 0; k < st.n_states; ++k) {
            double predicted = 0.0;
            for (std::size_t i = 0; i < st.n_points; ++i) {
                predicted += st.xi[k][i] * st.mu[j][i];
            }
            worst = std::max(worst, std::abs(predicted - st.born[j][k]));
        }
    }
    return worst;
}

lp::Solution solve_stage(const lp::LinearProgram& program, double best_residual) {
    const auto solution = lp::solve(program);
    if (solution.status != lp::Status::optimal) {
        throw SynthesisFailure("a synthesis stage produced no optimal basis", best_residual);
    }
    return solution;
}

// Re-solves every response row against the current epistemic states,
// minimizing the total absolute Born residual. Core points stay pinned at 1.
void solve_responses(SynthesisState& st, const SupportPattern& pattern, double best_residual) {
    for (std::size_t k = 0; k < st.n_states; ++k) {
        std::vector<std::size_t> free_idx;
        for (std::size_t i = 0; i < st.n_points; ++i) {
            if (!pattern.required_core[k][i]) {
                free_idx.push_back(i);
            }
        }
        auto& row = st.xi[k];
        std::fill(row.begin(), row.end(), 0.0);
        for (std::size_t i = 0; i < st.n_points; ++i) {
            if (pattern.required_core[k][i]) {
                row[i] = 1.0;
            }
        }
        if (free_idx.empty()) {
            continue;
        }

        const std::size_t nf = free_idx.size();
        lp::LinearProgram program;
        program.num_vars = nf + 2 * st.n_states;
        program.objective.assign(program.num_vars, 0.0);
        program.upper_bounds.assign(program.num_vars,
                                    std::numeric_limits<double>::infinity());
        for (std::size_t f = 0; f < nf; ++f) {
            program.upper_bounds[f] = 1.0;
        }
        for (std::size_t j = 0; j < st.n_states; ++j) {
            program.objective[nf + 2 * j] = 1.0;
            program.objective[nf + 2 * j + 1] = 1.0;
            std::vector<double> coeffs(program.num_vars, 0.0);
            double pinned_mass = 0.0;
            for (std::size_t f = 0; f < nf; ++f) {
                coeffs[f] = st.mu[j][free_idx[f]];
            }
            for (std::size_t i = 0; i < st.n_points; ++i) {
                if (pattern.required_core[k][i]) {
                    pinned_mass += st.mu[j][i];
                }
            }
            coeffs[nf + 2 * j] = 1.0;
            coeffs[nf + 2 * j + 1] = -1.0;
            program.eq_rows.push_back(std::move(coeffs));
            program.eq_rhs.push_back(st.born[j][k] - pinned_mass);
        }

        const auto solution = solve_stage(program, best_residual);
        for (std::size_t f = 0; f < nf; ++f) {
            row[free_idx[f]] = std::clamp(solution.x[f], 0.0, 1.0);
        }
    }
}

// Re-solves every epistemic state against the current responses. The unit
// normalization stays a hard constraint; Born rows carry residual slack.
void solve_preparations(SynthesisState& st, const SupportPattern& pattern,
                        SynthesisObjective objective, double best_residual) {
    for (std::size_t j = 0; j < st.n_states; ++j) {
        std::vector<std::size_t> allowed;
        for (std::size_t i = 0; i < st.n_points; ++i) {
            if (pattern.allowed_support[j][i]) {
                allowed.push_back(i);
            }
        }
        const std::size_t na = allowed.size();

        lp::LinearProgram program;
        program.num_vars = na + 2 * st.n_states;
        program.objective.assign(program.num_vars, 0.0);
        for (std::size_t k = 0; k < st.n_states; ++k) {
            program.objective[na + 2 * k] = 1.0;
            program.objective[na + 2 * k + 1] = 1.0;
        }
        {
            std::vector<double> norm_row(program.num_vars, 0.0);
            std::fill(norm_row.begin(), norm_row.begin() + static_cast<std::ptrdiff_t>(na), 1.0);
            program.eq_rows.push_back(std::move(norm_row));
            program.eq_rhs.push_back(1.0);
        }
        for (std::size_t k = 0; k < st.n_states; ++k) {
            std::vector<double> coeffs(program.num_vars, 0.0);
            for (std::size_t a = 0; a < na; ++a) {
                coeffs[a] = st.xi[k][allowed[a]];
            }
            coeffs[na + 2 * k] = 1.0;
            coeffs[na + 2 * k + 1] = -1.0;
            program.eq_rows.push_back(std::move(coeffs));
            program.eq_rhs.push_back(st.born[j][k]);
        }

        auto solution = solve_stage(program, best_residual);

        if (objective == SynthesisObjective::max_total_overlap) {
            // Lexicographic second pass: hold the residual at its optimum and
            // push mass onto points other filters are allowed to support.
            lp::LinearProgram second = program;
            std::vector<double> cap_row(second.num_vars + 1, 0.0);
            for (std::size_t k = 0; k < st.n_states; ++k) {
                cap_row[na + 2 * k] = 1.0;
                cap_row[na + 2 * k + 1] = 1.0;
            }
            cap_row[second.num_vars] = 1.0; // slack keeping the cap an equality
            for (auto& existing : second.eq_rows) {
                existing.push_back(0.0);
            }
            second.num_vars += 1;
            second.eq_rows.push_back(std::move(cap_row));
            second.eq_rhs.push_back(solution.objective + 1e-12);
            second.objective.assign(second.num_vars, 0.0);
            for (std::size_t a = 0; a < na; ++a) {
                double pull = 0.0;
                for (std::size_t k = 0; k < st.n_states; ++k) {
                    if (k != j && pattern.allowed_support[k][allowed[a]]) {
                        pull += 1.0;
                    }
                }
                second.objective[a] = -pull;
            }
            if (!second.upper_bounds.empty()) {
                second.upper_bounds.push_back(std::numeric_limits<double>::infinity());
            }
            solution = solve_stage(second, best_residual);
        }

        auto& row = st.mu[j];
        std::fill(row.begin(), row.end(), 0.0);
        double total = 0.0;
        for (std::size_t a = 0; a < na; ++a) {
            row[allowed[a]] = std::max(0.0, solution.x[a]);
            total += row[allowed[a]];
        }
        for (double& v : row) {
            v /= total;
        }
    }
}

} // namespace

SynthesisResult synthesize_model(const Scenario& scenario, std::size_t n_points,
                                 const SupportPattern& pattern, SynthesisObjective objective,
                                 const SynthesisOptions& options) {
    const std::size_t n_states = scenario.states().size();
    if (n_points < n_states) {
        throw ValidationError("synthesis needs at least one ontic point per state");
    }
    pattern.validate(n_states, n_points);

    SynthesisState st;
    st.n_states = n_states;
    st.n_points = n_points;
    st.born.assign(n_states, std::vector<double>(n_states, 0.0));
    for (std::size_t j = 0; j < n_states; ++j) {
        for (std::size_t k = 0; k < n_states; ++k) {
            st.born[j][k] = j == k ? 1.0
                                   : quantum::born_probability(scenario.states()[j].state,
                                                               scenario.states()[k].state);
        }
    }
    st.mu.assign(n_states, std::vector<double>(n_points, 0.0));
    for (std::size_t j = 0; j < n_states; ++j) {
        double count = 0.0;
        for (std::size_t i = 0; i < n_points; ++i) {
            count += pattern.allowed_support[j][i] ? 1.0 : 0.0;
        }
        for (std::size_t i = 0; i < n_points; ++i) {
            if (pattern.allowed_support[j][i]) {
                st.mu[j][i] = 1.0 / count;
            }
        }
    }
    st.xi.assign(n_states, std::vector<double>(n_points, 0.0));

    double best = std::numeric_limits<double>::infinity();
    std::size_t iterations = 0;
    bool converged = false;
    int stalled = 0;
    auto track = [&](double residual) {
        if (residual < best - 1e-15) {
            best = residual;
            stalled = 0;
        } else {
            ++stalled;
        }
        return residual <= options.eps_residual;
    };
    while (iterations < options.max_iterations) {
        ++iterations;
        solve_responses(st, pattern, best);
        if (track(worst_born_residual(st))) {
            converged = true;
            break;
        }
        solve_preparations(st, pattern, objective, best);
        if (track(worst_born_residual(st))) {
            converged = true;
            break;
        }
        if (stalled >= 3) {
            break; // the alternation has stopped making progress
        }
    }
    if (!converged) {
        std::ostringstream oss;
        oss << "synthesis missed the residual target after " << iterations << " iterations";
        throw SynthesisFailure(oss.str(), best);
    }

    std::vector<std::string> atom_labels;
    atom_labels.reserve(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        atom_labels.push_back("l" + std::to_string(i));
    }
    auto space =
        std::make_shared<const ontic::OnticSpace>(ontic::OnticSpace::atomic(atom_labels));
    std::vector<ontic::EpistemicState> preparations;
    std::vector<ontic::ResponseFunction> responses;
    for (std::size_t j = 0; j < n_states; ++j) {
        preparations.emplace_back(space, scenario.states()[j].label, st.mu[j]);
        responses.push_back(
            ontic::ResponseFunction::filter(space, scenario.states()[j].label, st.xi[j]));
    }
    SynthesisResult result{ontic::OntologicalModel("synth", scenario.dim(), space,
                                                   std::move(preparations), std::move(responses),
                                                   ontic::ToleranceConfig::atomic_defaults()),
                           worst_born_residual(st), iterations};
    for (const auto& label : result.model.labels()) {
        if (!result.model.check_certainty(label).holds) {
            throw SynthesisFailure("synthesized model violates quantum certainty for " + label,
                                   result.max_born_residual);
        }
    }
    return result;
}

} // namespace ontoscope::models
