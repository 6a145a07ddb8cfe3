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

#include "ontoscope/audit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <iterator>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "ontoscope/errors.hpp"
#include "ontoscope/quantum.hpp"

namespace ontoscope::audit {

namespace {

constexpr std::int64_t kMaxDimension = 1000000000;

void require_dimension(std::int64_t d) {
    if (d < 2) {
        throw DomainError("dimension must be at least 2");
    }
    if (d > kMaxDimension) {
        throw DomainError("dimensions above 1e9 are not supported");
    }
}

double weighted_mass(const std::vector<double>& densities, const std::vector<double>& weights,
                     const std::vector<std::size_t>& indices) {
    double total = 0.0;
    for (std::size_t i : indices) {
        total += densities[i] * weights[i];
    }
    return total;
}

unsigned resolve_threads(unsigned requested, std::size_t jobs) {
    unsigned n = requested;
    if (n == 0) {
        if (const char* env = std::getenv("ONTOSCOPE_THREADS")) {
            char* end = nullptr;
            const long parsed = std::strtol(env, &end, 10);
            if (end != env && *end == '\0' && parsed > 0) {
                n = static_cast<unsigned>(parsed);
            }
        }
    }
    if (n == 0) {
        n = std::thread::hardware_concurrency();
    }
    if (n == 0) {
        n = 1;
    }
    if (jobs < n) {
        n = static_cast<unsigned>(jobs);
    }
    return std::max(1u, n);
}

} // namespace

std::string to_string(Classification classification) {
    switch (classification) {
    case Classification::psi_ontic:
        return "psi_ontic";
    case Classification::maximally_psi_epistemic:
        return "maximally_psi_epistemic";
    case Classification::nonmaximal_psi_epistemic:
        return "nonmaximal_psi_epistemic";
    case Classification::mixed:
        return "mixed";
    }
    throw DomainError("unknown classification value");
}

std::optional<double> omega(const ontic::OntologicalModel& model,
                            const models::Scenario& scenario, const std::string& psi_label,
                            const std::string& phi_label) {
    const auto certainty = model.check_certainty(phi_label);
    if (!certainty.holds) {
        std::ostringstream oss;
        oss << "quantum certainty fails for " << phi_label << " (deviation "
            << certainty.worst_deviation << "), so its ontic support is not meaningful";
        throw CertaintyViolation(oss.str());
    }
    const double iq =
        quantum::born_probability(scenario.state(psi_label), scenario.state(phi_label));
    if (iq < model.tolerances().eps_residual) {
        return std::nullopt;
    }
    const auto& mu = model.preparation(psi_label).densities();
    const auto& w = model.space()->weights();
    return weighted_mass(mu, w, model.lambda_set(phi_label)) / iq;
}

std::vector<std::size_t> lambda_r_indices(const ontic::OntologicalModel& model,
                                          const std::string& psi_label,
                                          const std::string& phi_label) {
    const auto lambda = model.lambda_set(psi_label);
    const auto support = model.support_set(phi_label);
    const auto core = model.core_set(phi_label);
    std::vector<std::size_t> fuzzy;
    std::set_difference(support.begin(), support.end(), core.begin(), core.end(),
                        std::back_inserter(fuzzy));
    std::vector<std::size_t> region;
    std::set_intersection(lambda.begin(), lambda.end(), fuzzy.begin(), fuzzy.end(),
                          std::back_inserter(region));
    return region;
}

double i_ont(const ontic::OntologicalModel& model, const std::string& psi_label,
             const std::string& phi_label) {
    const auto& mu = model.preparation(psi_label).densities();
    const auto& xi = model.response(phi_label).pass_values();
    const auto& w = model.space()->weights();
    double total = 0.0;
    for (std::size_t i : lambda_r_indices(model, psi_label, phi_label)) {
        total += xi[i] * mu[i] * w[i];
    }
    return total;
}

double decomposition_check(const ontic::OntologicalModel& model,
                           const models::Scenario& scenario, const std::string& psi_label,
                           const std::string& phi_label) {
    const double iq =
        quantum::born_probability(scenario.state(psi_label), scenario.state(phi_label));
    const auto lambda = model.lambda_set(psi_label);
    const auto core = model.core_set(phi_label);
    std::vector<std::size_t> certain;
    std::set_intersection(lambda.begin(), lambda.end(), core.begin(), core.end(),
                          std::back_inserter(certain));
    const auto& mu = model.preparation(psi_label).densities();
    const auto& w = model.space()->weights();
    const double core_mass = weighted_mass(mu, w, certain);
    return std::abs(core_mass + i_ont(model, psi_label, phi_label) - iq);
}

double identity_check(const ontic::OntologicalModel& model, const models::Scenario& scenario,
                      const std::string& psi_label, const std::string& phi_label) {
    for (const auto* label : {&psi_label, &phi_label}) {
        if (!model.check_reciprocity(*label).reciprocal) {
            throw NonReciprocalModel("the identity is only asserted for reciprocal models; " +
                                     *label + " fails the reciprocity check");
        }
    }
    const auto om = omega(model, scenario, psi_label, phi_label);
    if (!om.has_value()) {
        throw OrthogonalPair("omega is undefined for the orthogonal pair " + psi_label + ", " +
                             phi_label);
    }
    const double iq =
        quantum::born_probability(scenario.state(psi_label), scenario.state(phi_label));
    return std::abs(i_ont(model, psi_label, phi_label) - (1.0 - *om) * iq);
}

double bound_constant(std::int64_t d) {
    require_dimension(d);
    const std::uint64_t ud = static_cast<std::uint64_t>(d);
    const std::uint64_t gap_sq = (ud - 2) * (ud - 2);
    return static_cast<double>(gap_sq) / static_cast<double>(ud * ud + gap_sq);
}

double maroney_omega_bound(std::int64_t d) {
    require_dimension(d);
    const std::uint64_t ud = static_cast<std::uint64_t>(d);
    return static_cast<double>(ud * ud) /
           static_cast<double>(2 * (ud * ud - 2 * ud + 2));
}

AuditReport classify(const ontic::OntologicalModel& model, const models::Scenario& scenario,
                     unsigned max_threads) {
    const auto labels = scenario.labels();
    const auto& tol = model.tolerances();

    // Born reproduction is the precondition for everything else; audit
    // numbers computed from a non-reproducing model would be meaningless.
    {
        double worst = -1.0;
        std::string worst_psi;
        std::string worst_phi;
        for (const auto& psi : labels) {
            for (const auto& phi : labels) {
                const double expected =
                    quantum::born_probability(scenario.state(psi), scenario.state(phi));
                const double residual =
                    std::abs(model.predicted_probability(psi, phi) - expected);
                if (residual > worst) {
                    worst = residual;
                    worst_psi = psi;
                    worst_phi = phi;
                }
            }
        }
        if (worst > tol.eps_residual) {
            std::ostringstream oss;
            oss << "model fails to reproduce the Born rule: worst pair (" << worst_psi << ", "
                << worst_phi << ") misses by " << worst;
            throw BornViolation(oss.str(), worst_psi, worst_phi, worst);
        }
    }

    AuditReport report;
    report.model = model.name();
    report.dim = model.dim();
    report.tolerances = tol;
    report.bound_constant = bound_constant(report.dim);
    report.omega_d_bound = maroney_omega_bound(report.dim);

    std::map<std::string, bool> certainty_by_label;
    std::map<std::string, bool> reciprocal_by_label;
    report.flags.certainty_all = true;
    report.flags.reciprocal_all = true;
    report.flags.deterministic_all = true;
    for (const auto& label : labels) {
        const bool certain = model.check_certainty(label).holds;
        const bool reciprocal = model.check_reciprocity(label).reciprocal;
        certainty_by_label[label] = certain;
        reciprocal_by_label[label] = reciprocal;
        report.flags.certainty_all &= certain;
        report.flags.reciprocal_all &= reciprocal;
        report.flags.deterministic_all &= model.check_determinism(label).deterministic;
    }

    std::vector<std::pair<std::size_t, std::size_t>> index_pairs;
    for (std::size_t j = 0; j < labels.size(); ++j) {
        for (std::size_t k = 0; k < labels.size(); ++k) {
            if (j != k) {
                index_pairs.emplace_back(j, k);
            }
        }
    }
    report.pairs.resize(index_pairs.size());

    const auto audit_pair = [&](std::size_t slot) {
        const auto& psi = labels[index_pairs[slot].first];
        const auto& phi = labels[index_pairs[slot].second];
        PairAudit pair;
        pair.psi_label = psi;
        pair.phi_label = phi;
        pair.i_q = quantum::born_probability(scenario.state(psi), scenario.state(phi));
        pair.born_residual = std::abs(model.predicted_probability(psi, phi) - pair.i_q);
        pair.lambda_r_size = lambda_r_indices(model, psi, phi).size();
        pair.i_ont = i_ont(model, psi, phi);
        pair.decomposition_residual = decomposition_check(model, scenario, psi, phi);
        if (certainty_by_label.at(phi)) {
            pair.omega = omega(model, scenario, psi, phi);
        }
        if (pair.omega.has_value() && reciprocal_by_label.at(psi) &&
            reciprocal_by_label.at(phi)) {
            pair.identity_residual = std::abs(pair.i_ont - (1.0 - *pair.omega) * pair.i_q);
        }
        pair.below_dimension_floor =
            pair.omega.has_value() &&
            pair.i_ont < report.bound_constant * pair.i_q - tol.eps_residual;
        report.pairs[slot] = std::move(pair);
    };

    const unsigned threads = resolve_threads(max_threads, index_pairs.size());
    if (threads <= 1) {
        for (std::size_t slot = 0; slot < index_pairs.size(); ++slot) {
            audit_pair(slot);
        }
    } else {
        std::mutex error_mutex;
        std::exception_ptr first_error;
        std::vector<std::thread> workers;
        workers.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            workers.emplace_back([&, t] {
                try {
                    for (std::size_t slot = t; slot < index_pairs.size(); slot += threads) {
                        audit_pair(slot);
                    }
                } catch (...) {
                    const std::lock_guard<std::mutex> guard(error_mutex);
                    if (!first_error) {
                        first_error = std::current_exception();
                    }
                }
            });
        }
        for (auto& worker : workers) {
            worker.join();
        }
        if (first_error) {
            std::rethrow_exception(first_error);
        }
    }

    std::vector<double> defined;
    for (const auto& pair : report.pairs) {
        if (pair.omega.has_value()) {
            defined.push_back(*pair.omega);
        }
        if (pair.below_dimension_floor) {
            report.notes.push_back("pair (" + pair.psi_label + ", " + pair.phi_label +
                                   "): measured i_ont sits below the dimension floor; "
                                   "basis-independence violated or tolerance artifact");
        }
    }
    const double eps = tol.eps_residual;
    if (defined.empty()) {
        // No pair pins down omega; fall back to the structural flags so the
        // classification stays consistent with them by construction.
        report.classification = report.flags.reciprocal_all && report.flags.deterministic_all
                                    ? Classification::maximally_psi_epistemic
                                    : Classification::psi_ontic;
        report.notes.push_back(
            "no pair has a defined omega; classification rests on the structural flags");
    } else {
        const bool all_low =
            std::all_of(defined.begin(), defined.end(), [&](double v) { return v <= eps; });
        const bool all_high = std::all_of(defined.begin(), defined.end(),
                                          [&](double v) { return v >= 1.0 - eps; });
        const bool all_inside = std::all_of(defined.begin(), defined.end(), [&](double v) {
            return v > eps && v < 1.0 - eps;
        });
        if (all_low) {
            report.classification = Classification::psi_ontic;
        } else if (all_high) {
            report.classification = Classification::maximally_psi_epistemic;
        } else if (all_inside) {
            report.classification = Classification::nonmaximal_psi_epistemic;
        } else {
            report.classification = Classification::mixed;
        }
    }
    report.flags.classification_consistent =
        (report.flags.reciprocal_all && report.flags.deterministic_all) ==
        (report.classification == Classification::maximally_psi_epistemic);
    return report;
}

} // namespace ontoscope::audit
