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
 * Acceptance gate for the whole toolkit. Each criterion prints exactly one
 * PASS or FAIL line; the exit status is the number of failed criteria.
 *
 * The random state pairs of criterion 1 use a hand-rolled Box-Muller sampler
 * over a fixed mt19937_64 seed, so the sweep is reproducible across standard
 * library implementations.
 */

#include <array>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ontoscope/audit.hpp"
#include "ontoscope/errors.hpp"
#include "ontoscope/models.hpp"
#include "ontoscope/ontic.hpp"
#include "ontoscope/quantum.hpp"

#include "test_support.hpp"

namespace {

using namespace ontoscope;
using ontoscope::testing::basis_state;
using ontoscope::testing::plus_state;
using ontoscope::testing::zx_scenario;

struct Outcome {
    bool pass = false;
    std::string detail;
};

/// Accumulates sub-check failures; the first few failure labels become the
/// FAIL detail so the one-line report stays readable.
class Checker {
  public:
    void require(bool ok, const std::string& label) {
        if (ok) {
            return;
        }
        pass_ = false;
        if (failure_count_ < 4) {
            if (!failures_.empty()) {
                failures_ += "; ";
            }
            failures_ += label;
        }
        ++failure_count_;
    }

    Outcome finish(const std::string& pass_detail) const {
        if (pass_) {
            return {true, pass_detail};
        }
        std::string detail = failures_;
        if (failure_count_ > 4) {
            detail += "; and " + std::to_string(failure_count_ - 4) + " more";
        }
        return {false, detail};
    }

    bool passing() const { return pass_; }

  private:
    bool pass_ = true;
    std::string failures_;
    std::size_t failure_count_ = 0;
};

std::string sci(double value) {
    std::ostringstream out;
    out << std::scientific << std::setprecision(2) << value;
    return out.str();
}

std::string fixed1(double value) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(1) << value;
    return out.str();
}

/// Reports produced along the way, re-examined by criterion 9.
struct SuiteState {
    std::vector<audit::AuditReport> reports;
    bool identity_pass = false;
    bool decomposition_pass = false;
    bool bounds_pass = false;
};

double uniform_open(std::mt19937_64& rng) {
    // 53 uniform bits shifted into (0, 1); never 0, so log stays finite.
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

std::array<double, 2> gaussian_pair(std::mt19937_64& rng) {
    const double radius = std::sqrt(-2.0 * std::log(uniform_open(rng)));
    const double angle = 2.0 * std::numbers::pi * uniform_open(rng);
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

quantum::StateVector random_qubit(std::mt19937_64& rng) {
    const auto first = gaussian_pair(rng);
    const auto second = gaussian_pair(rng);
    return quantum::StateVector::normalized({{first[0], first[1]}, {second[0], second[1]}});
}

/// Three-state qubit scenario for the sphere-grid audits: |0>, |+>, and a
/// polar state at pi/4, pairwise overlaps 0.5 and ~0.854.
models::Scenario ks_trio(std::size_t grid_size = models::kDefaultGridSize) {
    const double theta = std::numbers::pi / 8.0;
    return models::Scenario(
        2,
        {{"z", basis_state(2, 0)},
         {"x", plus_state()},
         {"m", quantum::StateVector({{std::cos(theta), 0.0}, {std::sin(theta), 0.0}})}},
        grid_size);
}

/// Second state of the atomic-model family: (e0 + i e1)/sqrt(2) for qubits,
/// (e0 + e1)/sqrt(2) above.
quantum::StateVector mix_state(int dim) {
    std::vector<quantum::Complex> amps(static_cast<std::size_t>(dim), 0.0);
    amps[0] = 1.0;
    amps[1] = dim == 2 ? quantum::Complex(0.0, 1.0) : quantum::Complex(1.0, 0.0);
    return quantum::StateVector::normalized(std::move(amps));
}

quantum::StateVector flat_state(int dim) {
    std::vector<quantum::Complex> amps(static_cast<std::size_t>(dim), 1.0);
    return quantum::StateVector::normalized(std::move(amps));
}

/// Three pairwise non-orthogonal states in dimension d.
models::Scenario atomic_scenario(int dim) {
    return models::Scenario(dim, {{"e0", basis_state(dim, 0)},
                                  {"mix", mix_state(dim)},
                                  {"flat", flat_state(dim)}});
}

// Criterion 1: the sphere-grid qubit model reproduces the Born rule within
// 2e-3 at N = 20000 over 100 seeded random pairs, fast, and the residual
// shrinks strictly from N = 5000 to N = 80000 on the same pairs.
Outcome criterion_born_reproduction(SuiteState&) {
    Checker check;
    std::mt19937_64 rng(20260819);
    std::vector<std::array<quantum::StateVector, 2>> state_pairs;
    state_pairs.reserve(100);
    for (int i = 0; i < 100; ++i) {
        state_pairs.push_back({random_qubit(rng), random_qubit(rng)});
    }

    const auto max_residual = [&state_pairs](std::size_t grid_size) {
        const std::array<std::string, 2> labels = {"a", "b"};
        double worst = 0.0;
        for (const auto& states : state_pairs) {
            const models::Scenario scenario(
                2, {{labels[0], states[0]}, {labels[1], states[1]}}, grid_size);
            const auto model = models::build_ks_qubit(scenario);
            for (const auto& psi : labels) {
                for (const auto& phi : labels) {
                    const double expected = quantum::born_probability(scenario.state(psi),
                                                                      scenario.state(phi));
                    worst = std::max(worst,
                                     std::abs(model.predicted_probability(psi, phi) - expected));
                }
            }
        }
        return worst;
    };

    const auto start = std::chrono::steady_clock::now();
    const double at_20000 = max_residual(20000);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double at_5000 = max_residual(5000);
    const double at_80000 = max_residual(80000);

    check.require(at_20000 <= 2e-3,
                  "worst residual " + sci(at_20000) + " above 2e-3 at N = 20000");
    check.require(seconds <= 10.0,
                  "the hundred-pair sweep took " + fixed1(seconds) + " s, above 10 s");
    check.require(at_80000 < at_5000, "no strict refinement: " + sci(at_80000) +
                                          " at N = 80000 vs " + sci(at_5000) + " at N = 5000");
    return check.finish("worst residual " + sci(at_20000) + " over 100 random pairs at N = " +
                        "20000 in " + fixed1(seconds) + " s; refinement " + sci(at_5000) +
                        " (N = 5000) -> " + sci(at_80000) + " (N = 80000)");
}

// Criterion 2: the sphere-grid model audits as reciprocal, deterministic,
// and maximally psi-epistemic, with omega within 5e-3 of 1 and i_ont exactly
// zero on every pair.
Outcome criterion_grid_classification(SuiteState& suite) {
    Checker check;
    const auto scenario = ks_trio();
    const auto report = audit::classify(models::build_ks_qubit(scenario), scenario);
    suite.reports.push_back(report);

    check.require(report.flags.certainty_all, "certainty_all is false");
    check.require(report.flags.reciprocal_all, "reciprocal_all is false");
    check.require(report.flags.deterministic_all, "deterministic_all is false");
    check.require(report.classification == audit::Classification::maximally_psi_epistemic,
                  "classification is " + audit::to_string(report.classification));

    std::size_t defined = 0;
    double worst_gap = 0.0;
    for (const auto& pair : report.pairs) {
        const std::string where = " for (" + pair.psi_label + ", " + pair.phi_label + ")";
        if (pair.omega.has_value()) {
            ++defined;
            worst_gap = std::max(worst_gap, std::abs(*pair.omega - 1.0));
        }
        check.require(pair.i_ont == 0.0, "i_ont not exactly zero" + where);
        check.require(pair.lambda_r_size == 0, "lambda_r not empty" + where);
    }
    check.require(defined == report.pairs.size(), "some omega values are undefined");
    check.require(worst_gap <= 5e-3, "omega deviates from 1 by " + sci(worst_gap));
    return check.finish("maximally psi-epistemic; " + std::to_string(defined) +
                        " omegas within " + sci(worst_gap) +
                        " of 1; every i_ont exactly zero");
}

// Criterion 3: the atomic model is exactly psi-ontic in every tested
// dimension: omega = 0 and i_ont = i_q bit for bit, residuals <= 1e-12.
Outcome criterion_atomic_exactness(SuiteState& suite) {
    Checker check;
    for (int dim : {2, 3, 4, 8}) {
        const auto scenario = atomic_scenario(dim);
        const auto report = audit::classify(models::build_bb_ontic(scenario), scenario);
        suite.reports.push_back(report);
        const std::string where = " at d = " + std::to_string(dim);
        check.require(report.classification == audit::Classification::psi_ontic,
                      "classification is " + audit::to_string(report.classification) + where);
        for (const auto& pair : report.pairs) {
            check.require(pair.omega.has_value() && *pair.omega == 0.0,
                          "omega not exactly zero" + where);
            check.require(pair.i_ont == pair.i_q, "i_ont differs from i_q" + where);
            check.require(pair.decomposition_residual <= 1e-12,
                          "decomposition residual above 1e-12" + where);
            check.require(pair.identity_residual.has_value() &&
                              *pair.identity_residual <= 1e-12,
                          "identity residual missing or above 1e-12" + where);
        }
    }
    return check.finish("psi-ontic with omega = 0 and i_ont = i_q exactly for d in "
                        "{2, 3, 4, 8}; residuals <= 1e-12");
}

// Criterion 4: on every reciprocal model built by this suite, each defined
// per-pair residual of i_ont = (1 - omega) i_q stays within the residual
// tolerance of the model's kind.
Outcome criterion_identity(SuiteState& suite) {
    Checker check;
    struct Case {
        std::string name;
        ontic::OntologicalModel model;
        models::Scenario scenario;
    };
    const auto trio = ks_trio();
    const auto qutrit = atomic_scenario(3);
    const auto zx = zx_scenario();
    std::vector<Case> cases;
    cases.push_back({"sphere-grid", models::build_ks_qubit(trio), trio});
    cases.push_back({"atomic", models::build_bb_ontic(qutrit), qutrit});
    cases.push_back(
        {"synthesized",
         models::synthesize_model(zx, 2, models::SupportPattern::bb_style(2)).model, zx});

    std::string summary;
    for (const auto& entry : cases) {
        const auto report = audit::classify(entry.model, entry.scenario);
        suite.reports.push_back(report);
        check.require(report.flags.reciprocal_all, entry.name + " model is not reciprocal");
        const double eps = entry.model.tolerances().eps_residual;
        std::size_t defined = 0;
        double worst = 0.0;
        for (const auto& pair : report.pairs) {
            if (pair.identity_residual.has_value()) {
                ++defined;
                worst = std::max(worst, *pair.identity_residual);
            }
        }
        check.require(defined > 0, entry.name + " model yielded no identity residuals");
        check.require(worst <= eps, entry.name + " identity residual " + sci(worst) +
                                        " above " + sci(eps));
        if (!summary.empty()) {
            summary += ", ";
        }
        summary += entry.name + " " + sci(worst) + " <= " + sci(eps);
    }
    const Outcome outcome = check.finish("per-pair identity residuals: " + summary);
    suite.identity_pass = outcome.pass;
    return outcome;
}

// Criterion 5: the certainty-only mass decomposition holds on every model
// that passes certainty, including a deliberately non-reciprocal one.
Outcome criterion_decomposition(SuiteState& suite) {
    Checker check;
    struct Case {
        std::string name;
        ontic::OntologicalModel model;
        models::Scenario scenario;
        bool expect_reciprocal;
    };
    const auto trio = ks_trio();
    const auto qutrit = atomic_scenario(3);
    const auto zx = zx_scenario();
    std::vector<Case> cases;
    cases.push_back({"sphere-grid", models::build_ks_qubit(trio), trio, true});
    cases.push_back({"atomic", models::build_bb_ontic(qutrit), qutrit, true});
    cases.push_back(
        {"synthesized",
         models::synthesize_model(zx, 2, models::SupportPattern::bb_style(2)).model, zx, true});
    cases.push_back({"non-reciprocal", ontoscope::testing::nonreciprocal_model(), zx, false});
    cases.push_back({"half-overlap", ontoscope::testing::nonmaximal_toy_model(), zx, true});
    cases.push_back({"three-state", ontoscope::testing::mixed_toy_model(),
                     ontoscope::testing::mixed_toy_scenario(), true});

    double worst_overall = 0.0;
    for (const auto& entry : cases) {
        const auto report = audit::classify(entry.model, entry.scenario);
        suite.reports.push_back(report);
        check.require(report.flags.certainty_all, entry.name + " model fails certainty");
        check.require(report.flags.reciprocal_all == entry.expect_reciprocal,
                      entry.name + " model has unexpected reciprocity");
        const double eps = entry.model.tolerances().eps_residual;
        double worst = 0.0;
        for (const auto& pair : report.pairs) {
            worst = std::max(worst, pair.decomposition_residual);
        }
        check.require(worst <= eps, entry.name + " decomposition residual " + sci(worst) +
                                        " above " + sci(eps));
        worst_overall = std::max(worst_overall, worst / eps);
    }
    const Outcome outcome =
        check.finish("decomposition residual within tolerance on all 6 models (worst at " +
                     sci(worst_overall) + " of its budget), reciprocity not required");
    suite.decomposition_pass = outcome.pass;
    return outcome;
}

// Criterion 6: closed forms of the dimension bound.
Outcome criterion_bound_constants(SuiteState& suite) {
    Checker check;
    check.require(audit::bound_constant(3) == 0.1, "bound_constant(3) is not exactly 0.1");
    check.require(audit::bound_constant(2) == 0.0, "bound_constant(2) is not exactly 0");
    bool increasing = true;
    for (std::int64_t d = 3; d <= 200; ++d) {
        increasing = increasing && audit::bound_constant(d) > audit::bound_constant(d - 1);
    }
    check.require(increasing, "bound_constant is not strictly increasing on 2..200");
    check.require(audit::bound_constant(1000000) > audit::bound_constant(200),
                  "bound_constant does not keep growing toward the limit");
    const double limit_gap = std::abs(audit::bound_constant(1000000) - 0.5);
    check.require(limit_gap <= 1e-5, "bound_constant(1e6) misses 0.5 by " + sci(limit_gap));
    double worst_complement = 0.0;
    for (std::int64_t d = 2; d <= 100; ++d) {
        worst_complement =
            std::max(worst_complement, std::abs(1.0 - audit::maroney_omega_bound(d) -
                                                audit::bound_constant(d)));
    }
    check.require(worst_complement <= 1e-12,
                  "1 - omega bound vs bound_constant differ by " + sci(worst_complement));
    const Outcome outcome = check.finish(
        "bound_constant(2) = 0, bound_constant(3) = 0.1 exactly, strictly increasing, "
        "limit gap " + sci(limit_gap) + ", complement identity within " +
        sci(worst_complement));
    suite.bounds_pass = outcome.pass;
    return outcome;
}

// Criterion 7: randomness yield endpoints.
Outcome criterion_randomness(SuiteState&) {
    Checker check;
    const quantum::ProjectiveObservable qubit_basis({"up", "down"},
                                                    {basis_state(2, 0), basis_state(2, 1)});
    const double eigen_entropy = quantum::min_entropy(basis_state(2, 0), qubit_basis);
    check.require(eigen_entropy == 0.0, "eigenstate min-entropy is " + sci(eigen_entropy));

    std::vector<std::string> labels;
    std::vector<quantum::StateVector> eigenstates;
    for (int k = 0; k < 4; ++k) {
        labels.push_back("q" + std::to_string(k));
        eigenstates.push_back(basis_state(4, k));
    }
    const quantum::ProjectiveObservable four_basis(labels, eigenstates);
    const quantum::StateVector flat({{0.5, 0.0}, {0.5, 0.0}, {0.5, 0.0}, {0.5, 0.0}});
    check.require(quantum::guessing_probability(flat, four_basis) == 0.25,
                  "uniform d = 4 guessing probability is not exactly 1/4");
    check.require(quantum::min_entropy(flat, four_basis) == 2.0,
                  "uniform d = 4 min-entropy is not exactly 2 bits");
    return check.finish("eigenstate min-entropy exactly 0 bits; uniform four-level "
                        "preparation exactly 2 bits");
}

void compare_reports(Checker& check, const audit::AuditReport& got,
                     const audit::AuditReport& want) {
    const double tol = 1e-12;
    check.require(got.dim == want.dim, "dim differs");
    check.require(got.flags.certainty_all == want.flags.certainty_all &&
                      got.flags.reciprocal_all == want.flags.reciprocal_all &&
                      got.flags.deterministic_all == want.flags.deterministic_all &&
                      got.flags.classification_consistent ==
                          want.flags.classification_consistent,
                  "flags differ");
    check.require(got.classification == want.classification, "classification differs");
    check.require(got.bound_constant == want.bound_constant, "bound_constant differs");
    check.require(got.omega_d_bound == want.omega_d_bound, "omega_d_bound differs");
    check.require(got.notes == want.notes, "notes differ");
    check.require(got.tolerances.eps_support == want.tolerances.eps_support &&
                      got.tolerances.eps_core == want.tolerances.eps_core &&
                      got.tolerances.eps_residual == want.tolerances.eps_residual,
                  "tolerances differ");
    check.require(got.pairs.size() == want.pairs.size(), "pair count differs");
    if (got.pairs.size() != want.pairs.size()) {
        return;
    }
    for (std::size_t i = 0; i < got.pairs.size(); ++i) {
        const auto& a = got.pairs[i];
        const auto& b = want.pairs[i];
        const std::string where = " for (" + b.psi_label + ", " + b.phi_label + ")";
        check.require(a.psi_label == b.psi_label && a.phi_label == b.phi_label,
                      "pair order differs" + where);
        check.require(std::abs(a.i_q - b.i_q) <= tol, "i_q differs" + where);
        check.require(a.omega.has_value() == b.omega.has_value() &&
                          (!a.omega || std::abs(*a.omega - *b.omega) <= tol),
                      "omega differs" + where);
        check.require(std::abs(a.i_ont - b.i_ont) <= tol, "i_ont differs" + where);
        check.require(std::abs(a.born_residual - b.born_residual) <= tol,
                      "born residual differs" + where);
        check.require(std::abs(a.decomposition_residual - b.decomposition_residual) <= tol,
                      "decomposition residual differs" + where);
        check.require(a.identity_residual.has_value() == b.identity_residual.has_value() &&
                          (!a.identity_residual ||
                           std::abs(*a.identity_residual - *b.identity_residual) <= tol),
                      "identity residual differs" + where);
        check.require(a.lambda_r_size == b.lambda_r_size, "lambda_r size differs" + where);
        check.require(a.below_dimension_floor == b.below_dimension_floor,
                      "floor flag differs" + where);
    }
}

// Criterion 8: the synthesizer recovers the atomic construction from its
// support pattern alone, and a contradictory pattern fails loudly.
Outcome criterion_synthesizer(SuiteState& suite) {
    Checker check;
    const auto scenario = zx_scenario();
    const auto result =
        models::synthesize_model(scenario, 2, models::SupportPattern::bb_style(2));
    check.require(result.max_born_residual <= 1e-8,
                  "synthesis residual " + sci(result.max_born_residual) + " above 1e-8");

    const auto synthesized = audit::classify(result.model, scenario);
    const auto reference = audit::classify(models::build_bb_ontic(scenario), scenario);
    suite.reports.push_back(synthesized);
    suite.reports.push_back(reference);
    compare_reports(check, synthesized, reference);

    models::SupportPattern contradictory;
    contradictory.allowed_support = {{true, false}, {true, false}};
    contradictory.required_core = {{true, false}, {true, false}};
    bool failed_loudly = false;
    double best_residual = 0.0;
    try {
        models::synthesize_model(scenario, 2, contradictory);
    } catch (const SynthesisFailure& failure) {
        failed_loudly = true;
        best_residual = failure.best_residual();
    }
    check.require(failed_loudly, "the contradictory pattern did not raise SynthesisFailure");
    check.require(!failed_loudly || best_residual >= 0.1,
                  "the contradictory pattern reported an implausibly small best residual");
    return check.finish("synthesis residual " + sci(result.max_born_residual) +
                        "; audit matches the atomic reference field for field; the "
                        "contradictory pattern fails with best residual " +
                        sci(best_residual));
}

// Criterion 9: the general nonexistence of maximally psi-epistemic models
// above d = 2 concerns the full state space and has no finite-scenario
// witness, so the gate substitutes the property checks of criteria 4 to 6
// plus the classification-consistency flag on every report this suite
// produced.
Outcome criterion_consistency_substitute(SuiteState& suite) {
    Checker check;
    check.require(suite.identity_pass, "the identity criterion did not pass");
    check.require(suite.decomposition_pass, "the decomposition criterion did not pass");
    check.require(suite.bounds_pass, "the bound-constant criterion did not pass");
    check.require(!suite.reports.empty(), "no audit reports were collected");
    std::size_t inconsistent = 0;
    for (const auto& report : suite.reports) {
        if (!report.flags.classification_consistent) {
            ++inconsistent;
        }
    }
    check.require(inconsistent == 0,
                  std::to_string(inconsistent) + " reports carry inconsistent flags");
    return check.finish(
        "substituted check: criteria 4-6 passed and all " +
        std::to_string(suite.reports.size()) +
        " collected audit reports keep reciprocal+deterministic consistent with the "
        "maximally psi-epistemic classification");
}

} // namespace

int main() {
    using Criterion = Outcome (*)(SuiteState&);
    const std::array<Criterion, 9> criteria = {
        criterion_born_reproduction, criterion_grid_classification,
        criterion_atomic_exactness,  criterion_identity,
        criterion_decomposition,     criterion_bound_constants,
        criterion_randomness,        criterion_synthesizer,
        criterion_consistency_substitute,
    };

    SuiteState suite;
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome outcome;
        try {
            outcome = criteria[i](suite);
        } catch (const std::exception& error) {
            outcome = {false, std::string("unexpected exception: ") + error.what()};
        }
        std::cout << "criterion " << (i + 1) << ": " << (outcome.pass ? "PASS" : "FAIL")
                  << " - " << outcome.detail << "\n";
        if (!outcome.pass) {
            ++failures;
        }
    }
    return failures;
}
