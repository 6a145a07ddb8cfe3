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

#include "ontoscope/ontic.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>

#include "ontoscope/errors.hpp"

namespace ontoscope::ontic {

namespace {

std::string size_mismatch(const std::string& what, std::size_t got, std::size_t want) {
    std::ostringstream oss;
    oss << what << ": got " << got << " values for a space of size " << want;
    return oss.str();
}

} // namespace

void ToleranceConfig::validate() const {
    if (!(eps_support > 0.0) || !(eps_core > 0.0) || !(eps_residual > 0.0)) {
        throw ValidationError("tolerances must be strictly positive");
    }
    if (eps_support >= 1.0) {
        throw ValidationError("eps_support must be below 1");
    }
    if (eps_core >= 0.5) {
        throw ValidationError("eps_core must be below 0.5");
    }
    if (eps_residual >= 0.1) {
        throw ValidationError("eps_residual must be below 0.1");
    }
    if (eps_support >= 1.0 - eps_core) {
        throw ValidationError("eps_support must stay below 1 - eps_core");
    }
}

OnticSpace OnticSpace::sphere_grid(std::vector<std::array<double, 3>> points,
                                   std::vector<double> weights,
                                   double total_measure) {
    if (points.empty()) {
        throw ValidationError("a grid space needs at least one point");
    }
    if (points.size() != weights.size()) {
        throw ValidationError(size_mismatch("sphere_grid", weights.size(), points.size()));
    }
    double sum = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) {
            throw ValidationError("grid weights must be strictly positive");
        }
        sum += w;
    }
    if (std::abs(sum - total_measure) > kMeasureTolerance) {
        std::ostringstream oss;
        oss << "grid weights sum to " << sum << ", expected " << total_measure;
        throw ValidationError(oss.str());
    }
    OnticSpace space;
    space.kind_ = Kind::grid;
    space.points_ = std::move(points);
    space.weights_ = std::move(weights);
    space.total_measure_ = total_measure;
    return space;
}

OnticSpace OnticSpace::atomic(std::vector<std::string> labels) {
    if (labels.empty()) {
        throw ValidationError("an atomic space needs at least one atom");
    }
    std::set<std::string> seen;
    for (const auto& label : labels) {
        if (label.empty()) {
            throw ValidationError("atom labels must be nonempty");
        }
        if (!seen.insert(label).second) {
            throw ValidationError("duplicate atom label: " + label);
        }
    }
    OnticSpace space;
    space.kind_ = Kind::atomic;
    space.labels_ = std::move(labels);
    space.weights_.assign(space.labels_.size(), 1.0);
    space.total_measure_ = static_cast<double>(space.labels_.size());
    return space;
}

OnticSpace fibonacci_sphere(std::size_t n_points) {
    if (n_points == 0) {
        throw ValidationError("fibonacci_sphere needs at least one point");
    }
    const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
    std::vector<std::array<double, 3>> points;
    points.reserve(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n_points);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double theta = golden_angle * static_cast<double>(i);
        points.push_back({r * std::cos(theta), r * std::sin(theta), z});
    }
    std::vector<double> weights(n_points, 4.0 * std::numbers::pi / static_cast<double>(n_points));
    return OnticSpace::sphere_grid(std::move(points), std::move(weights));
}

EpistemicState::EpistemicState(std::shared_ptr<const OnticSpace> space, std::string label,
                               std::vector<double> densities)
    : space_(std::move(space)), label_(std::move(label)), densities_(std::move(densities)) {
    if (!space_) {
        throw ValidationError("epistemic state needs a space");
    }
    if (label_.empty()) {
        throw ValidationError("epistemic state label must be nonempty");
    }
    if (densities_.size() != space_->size()) {
        throw ValidationError(
            size_mismatch("epistemic state " + label_, densities_.size(), space_->size()));
    }
    double mass = 0.0;
    bool any_positive = false;
    const auto& weights = space_->weights();
    for (std::size_t i = 0; i < densities_.size(); ++i) {
        const double d = densities_[i];
        if (d < 0.0) {
            throw ValidationError("epistemic state " + label_ + " has a negative density");
        }
        if (d > 0.0) {
            any_positive = true;
        }
        mass += d * weights[i];
    }
    if (!any_positive) {
        throw ValidationError("epistemic state " + label_ + " is identically zero");
    }
    const double tol = space_->kind() == OnticSpace::Kind::atomic ? kAtomicNormTolerance
                                                                  : kGridNormTolerance;
    if (std::abs(mass - 1.0) > tol) {
        std::ostringstream oss;
        oss << "epistemic state " << label_ << " carries mass " << mass << ", expected 1";
        throw ValidationError(oss.str());
    }
}

ResponseFunction::ResponseFunction(std::shared_ptr<const OnticSpace> space,
                                   std::vector<std::string> outcome_labels,
                                   std::vector<std::vector<double>> values)
    : space_(std::move(space)), outcome_labels_(std::move(outcome_labels)),
      values_(std::move(values)) {
    if (!space_) {
        throw ValidationError("response function needs a space");
    }
    if (outcome_labels_.empty() || outcome_labels_.size() != values_.size()) {
        throw ValidationError("response function needs one value row per outcome");
    }
    std::set<std::string> seen;
    for (const auto& label : outcome_labels_) {
        if (label.empty()) {
            throw ValidationError("response outcome labels must be nonempty");
        }
        if (!seen.insert(label).second) {
            throw ValidationError("duplicate response outcome label: " + label);
        }
    }
    const std::size_t n = space_->size();
    for (const auto& row : values_) {
        if (row.size() != n) {
            throw ValidationError(size_mismatch("response function", row.size(), n));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        double column = 0.0;
        for (const auto& row : values_) {
            const double v = row[i];
            if (v < 0.0 || v > 1.0) {
                throw ValidationError("response values must lie in [0, 1]");
            }
            column += v;
        }
        if (std::abs(column - 1.0) > kResponseSumTolerance) {
            std::ostringstream oss;
            oss << "response values at point " << i << " sum to " << column;
            throw ValidationError(oss.str());
        }
    }
}

ResponseFunction ResponseFunction::filter(std::shared_ptr<const OnticSpace> space,
                                          const std::string& label,
                                          std::vector<double> pass_values) {
    std::vector<double> fail_values(pass_values.size());
    for (std::size_t i = 0; i < pass_values.size(); ++i) {
        fail_values[i] = 1.0 - pass_values[i];
    }
    return ResponseFunction(std::move(space), {label, "fail"},
                            {std::move(pass_values), std::move(fail_values)});
}

OntologicalModel::OntologicalModel(std::string name, int dim,
                                   std::shared_ptr<const OnticSpace> space,
                                   std::vector<EpistemicState> preparations,
                                   std::vector<ResponseFunction> responses,
                                   ToleranceConfig tolerances)
    : name_(std::move(name)), dim_(dim), space_(std::move(space)),
      preparations_(std::move(preparations)), responses_(std::move(responses)),
      tolerances_(tolerances) {
    if (dim_ < 2) {
        throw DimensionError("model dimension must be at least 2");
    }
    if (!space_) {
        throw ValidationError("model needs an ontic space");
    }
    if (preparations_.empty()) {
        throw ValidationError("model needs at least one preparation");
    }
    tolerances_.validate();
    for (std::size_t i = 0; i < preparations_.size(); ++i) {
        const auto& prep = preparations_[i];
        if (prep.space().get() != space_.get()) {
            throw ValidationError("preparation " + prep.label() +
                                  " lives on a different space than the model");
        }
        if (!prep_index_.emplace(prep.label(), i).second) {
            throw ValidationError("duplicate preparation label: " + prep.label());
        }
        labels_.push_back(prep.label());
    }
    for (std::size_t i = 0; i < responses_.size(); ++i) {
        const auto& resp = responses_[i];
        if (resp.space().get() != space_.get()) {
            throw ValidationError("response " + resp.outcome_labels().front() +
                                  " lives on a different space than the model");
        }
        const auto& outcomes = resp.outcome_labels();
        if (outcomes.size() != 2 || outcomes[1] != "fail") {
            throw ValidationError("model responses must be {label, fail} filters");
        }
        if (!resp_index_.emplace(outcomes.front(), i).second) {
            throw ValidationError("duplicate response label: " + outcomes.front());
        }
    }
    for (const auto& label : labels_) {
        if (resp_index_.find(label) == resp_index_.end()) {
            throw ValidationError("preparation " + label + " has no matching filter response");
        }
    }
}

bool OntologicalModel::has_label(const std::string& label) const {
    return prep_index_.find(label) != prep_index_.end();
}

std::size_t OntologicalModel::preparation_index(const std::string& label) const {
    auto it = prep_index_.find(label);
    if (it == prep_index_.end()) {
        throw LookupError("unknown preparation label: " + label);
    }
    return it->second;
}

std::size_t OntologicalModel::response_index(const std::string& label) const {
    auto it = resp_index_.find(label);
    if (it == resp_index_.end()) {
        throw LookupError("unknown response label: " + label);
    }
    return it->second;
}

const EpistemicState& OntologicalModel::preparation(const std::string& label) const {
    return preparations_[preparation_index(label)];
}

const ResponseFunction& OntologicalModel::response(const std::string& label) const {
    return responses_[response_index(label)];
}

double OntologicalModel::predicted_probability(const std::string& psi_label,
                                               const std::string& phi_label) const {
    const auto& mu = preparation(psi_label).densities();
    const auto& xi = response(phi_label).pass_values();
    const auto& w = space_->weights();
    double total = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        total += xi[i] * mu[i] * w[i];
    }
    return total;
}

std::vector<std::size_t> OntologicalModel::lambda_set(const std::string& psi_label) const {
    const auto& mu = preparation(psi_label).densities();
    const double peak = *std::max_element(mu.begin(), mu.end());
    const double cut = tolerances_.eps_support * peak;
    std::vector<std::size_t> indices;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (mu[i] > cut) {
            indices.push_back(i);
        }
    }
    return indices;
}

std::vector<std::size_t> OntologicalModel::support_set(const std::string& phi_label) const {
    const auto& xi = response(phi_label).pass_values();
    std::vector<std::size_t> indices;
    for (std::size_t i = 0; i < xi.size(); ++i) {
        if (xi[i] > tolerances_.eps_support) {
            indices.push_back(i);
        }
    }
    return indices;
}

std::vector<std::size_t> OntologicalModel::core_set(const std::string& phi_label) const {
    const auto& xi = response(phi_label).pass_values();
    std::vector<std::size_t> indices;
    for (std::size_t i = 0; i < xi.size(); ++i) {
        if (xi[i] >= 1.0 - tolerances_.eps_core) {
            indices.push_back(i);
        }
    }
    return indices;
}

CertaintyReport OntologicalModel::check_certainty(const std::string& psi_label) const {
    const auto& xi = response(psi_label).pass_values();
    CertaintyReport report;
    for (std::size_t i : lambda_set(psi_label)) {
        report.worst_deviation = std::max(report.worst_deviation, 1.0 - xi[i]);
    }
    report.holds = report.worst_deviation <= tolerances_.eps_core;
    return report;
}

InclusionReport OntologicalModel::check_inclusions(const std::string& psi_label) const {
    const auto lambda = lambda_set(psi_label);
    const auto core = core_set(psi_label);
    const auto support = support_set(psi_label);
    InclusionReport report;
    std::set_difference(lambda.begin(), lambda.end(), core.begin(), core.end(),
                        std::back_inserter(report.lambda_outside_core));
    std::set_difference(core.begin(), core.end(), support.begin(), support.end(),
                        std::back_inserter(report.core_outside_support));
    report.holds = report.lambda_outside_core.empty() && report.core_outside_support.empty();
    return report;
}

ReciprocityReport OntologicalModel::check_reciprocity(const std::string& psi_label) const {
    const auto lambda = lambda_set(psi_label);
    const auto core = core_set(psi_label);
    ReciprocityReport report;
    std::set_difference(core.begin(), core.end(), lambda.begin(), lambda.end(),
                        std::back_inserter(report.extra_core_indices));
    const bool lambda_in_core =
        std::includes(core.begin(), core.end(), lambda.begin(), lambda.end());
    report.reciprocal = lambda_in_core && report.extra_core_indices.empty();
    return report;
}

DeterminismReport OntologicalModel::check_determinism(const std::string& phi_label) const {
    const auto& xi = response(phi_label).pass_values();
    DeterminismReport report;
    for (std::size_t i = 0; i < xi.size(); ++i) {
        if (xi[i] > tolerances_.eps_support && xi[i] < 1.0 - tolerances_.eps_core) {
            report.fuzzy_indices.push_back(i);
        }
    }
    report.deterministic = report.fuzzy_indices.empty();
    return report;
}

} // namespace ontoscope::ontic
