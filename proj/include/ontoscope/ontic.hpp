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
 * Discretized ontological models: weighted ontic spaces, epistemic states,
 * response functions, and the support/core subset machinery built on them.
 *
 * An ontic space is a finite weighted set of points {(lambda_i, w_i)}.
 * Epistemic states are density values over the points (mass values for
 * atomic spaces), response functions are per-outcome probabilities at each
 * point, and a model bundles one space with a family of preparations and
 * single-outcome filter responses sharing it.
 *
 * Models are immutable after construction; every operation is a pure read
 * and may run concurrently without locking.
 */

#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

namespace ontoscope::ontic {

/// Normalization tolerance for atomic epistemic states (unit point masses).
inline constexpr double kAtomicNormTolerance = 1e-9;
/// Normalization tolerance for grid epistemic states at default resolution.
inline constexpr double kGridNormTolerance = 1e-3;
/// Tolerance on the total measure carried by a grid space.
inline constexpr double kMeasureTolerance = 1e-6;
/// Per-point tolerance on response values summing to 1 across outcomes.
inline constexpr double kResponseSumTolerance = 1e-10;

/// Thresholds steering the set machinery and residual checks.
///
/// eps_support is applied relative to the peak density when testing epistemic
/// support, and absolutely when testing response support. eps_core bounds the
/// allowed deviation from 1 for core membership. eps_residual bounds identity
/// and reproduction residuals.
struct ToleranceConfig {
    double eps_support = 1e-9;
    double eps_core = 1e-9;
    double eps_residual = 1e-10;

    static ToleranceConfig atomic_defaults() { return {1e-9, 1e-9, 1e-10}; }
    static ToleranceConfig grid_defaults() { return {1e-7, 1e-6, 5e-3}; }

    /// Throws ValidationError unless eps_support < 1, eps_core < 0.5,
    /// eps_residual < 0.1 and eps_support < 1 - eps_core (the last keeps
    /// core sets inside support sets for any admissible response).
    void validate() const;
};

/// A finite weighted discretization of an ontic state space.
class OnticSpace {
  public:
    enum class Kind { grid, atomic };

    /// Grid space from explicit points and quadrature weights. The weights
    /// must total `total_measure` within kMeasureTolerance.
    static OnticSpace sphere_grid(std::vector<std::array<double, 3>> points,
                                  std::vector<double> weights,
                                  double total_measure = 4.0 * std::numbers::pi);

    /// Atomic space of labeled point masses; every weight is 1.
    static OnticSpace atomic(std::vector<std::string> labels);

    Kind kind() const { return kind_; }
    std::size_t size() const { return weights_.size(); }
    const std::vector<double>& weights() const { return weights_; }
    double total_measure() const { return total_measure_; }

    /// Grid coordinates; empty for atomic spaces.
    const std::vector<std::array<double, 3>>& grid_points() const { return points_; }
    /// Atom labels; empty for grid spaces.
    const std::vector<std::string>& atom_labels() const { return labels_; }

  private:
    OnticSpace() = default;

    Kind kind_ = Kind::atomic;
    std::vector<std::array<double, 3>> points_;
    std::vector<std::string> labels_;
    std::vector<double> weights_;
    double total_measure_ = 0.0;
};

/// Near-uniform unit-sphere lattice with equal weights 4*pi/n.
///
/// Point i sits at height z = 1 - (2i+1)/n and azimuth i times the golden
/// angle, so any n yields a deterministic, reproducible grid.
OnticSpace fibonacci_sphere(std::size_t n_points);

/// The distribution over ontic states produced by one preparation.
class EpistemicState {
  public:
    /// Validates densities >= 0, not identically zero, and the weighted sum
    /// being 1 within the kind-dependent normalization tolerance.
    EpistemicState(std::shared_ptr<const OnticSpace> space, std::string label,
                   std::vector<double> densities);

    const std::shared_ptr<const OnticSpace>& space() const { return space_; }
    const std::string& label() const { return label_; }
    const std::vector<double>& densities() const { return densities_; }

  private:
    std::shared_ptr<const OnticSpace> space_;
    std::string label_;
    std::vector<double> densities_;
};

/// Per-outcome response probabilities at each ontic point.
///
/// values()[k][i] is the probability of outcome k at point i; the outcome
/// probabilities at each point sum to 1.
class ResponseFunction {
  public:
    ResponseFunction(std::shared_ptr<const OnticSpace> space,
                     std::vector<std::string> outcome_labels,
                     std::vector<std::vector<double>> values);

    /// Two-outcome filter form {label, "fail"} from the pass probabilities.
    static ResponseFunction filter(std::shared_ptr<const OnticSpace> space,
                                   const std::string& label,
                                   std::vector<double> pass_values);

    const std::shared_ptr<const OnticSpace>& space() const { return space_; }
    const std::vector<std::string>& outcome_labels() const { return outcome_labels_; }
    const std::vector<std::vector<double>>& values() const { return values_; }
    /// Row 0; for filter-form responses these are the pass probabilities.
    const std::vector<double>& pass_values() const { return values_.front(); }

  private:
    std::shared_ptr<const OnticSpace> space_;
    std::vector<std::string> outcome_labels_;
    std::vector<std::vector<double>> values_;
};

struct CertaintyReport {
    bool holds = false;
    double worst_deviation = 0.0; ///< 1 minus the smallest pass value on the state's support
};

struct InclusionReport {
    bool holds = false;
    std::vector<std::size_t> lambda_outside_core;
    std::vector<std::size_t> core_outside_support;
};

struct ReciprocityReport {
    bool reciprocal = false;
    std::vector<std::size_t> extra_core_indices; ///< core points the epistemic support misses
};

struct DeterminismReport {
    bool deterministic = false;
    std::vector<std::size_t> fuzzy_indices; ///< points where 0 < response < 1
};

/// An immutable (space, preparations, responses) triple with its thresholds.
///
/// Every preparation label carries a matching single-outcome filter response
/// for the same state; this is what the certainty and reciprocity checks run
/// against.
class OntologicalModel {
  public:
    OntologicalModel(std::string name, int dim,
                     std::shared_ptr<const OnticSpace> space,
                     std::vector<EpistemicState> preparations,
                     std::vector<ResponseFunction> responses,
                     ToleranceConfig tolerances);

    const std::string& name() const { return name_; }
    int dim() const { return dim_; }
    const std::shared_ptr<const OnticSpace>& space() const { return space_; }
    const ToleranceConfig& tolerances() const { return tolerances_; }

    /// Preparation labels in registration order.
    const std::vector<std::string>& labels() const { return labels_; }
    bool has_label(const std::string& label) const;
    const EpistemicState& preparation(const std::string& label) const;
    const ResponseFunction& response(const std::string& label) const;

    /// Sum of xi(phi|lambda_i) mu(lambda_i|psi) w_i over the whole space.
    /// Raw value: never clamped, so reproduction failures stay visible.
    double predicted_probability(const std::string& psi_label,
                                 const std::string& phi_label) const;

    /// Indices with density above eps_support relative to the peak density.
    std::vector<std::size_t> lambda_set(const std::string& psi_label) const;
    /// Indices where the filter's pass value exceeds eps_support (absolute).
    std::vector<std::size_t> support_set(const std::string& phi_label) const;
    /// Indices where the filter's pass value is within eps_core of 1.
    std::vector<std::size_t> core_set(const std::string& phi_label) const;

    /// Does the state's own filter respond 1 on the state's support?
    CertaintyReport check_certainty(const std::string& psi_label) const;
    /// lambda_set within core_set within support_set, with violators listed.
    InclusionReport check_inclusions(const std::string& psi_label) const;
    /// Is the core of the state's own filter exactly the state's support?
    ReciprocityReport check_reciprocity(const std::string& psi_label) const;
    /// Does the filter take only the values 0 and 1?
    DeterminismReport check_determinism(const std::string& phi_label) const;

  private:
    std::size_t preparation_index(const std::string& label) const;
    std::size_t response_index(const std::string& label) const;

    std::string name_;
    int dim_ = 0;
    std::shared_ptr<const OnticSpace> space_;
    std::vector<std::string> labels_;
    std::vector<EpistemicState> preparations_;
    std::vector<ResponseFunction> responses_;
    std::map<std::string, std::size_t> prep_index_;
    std::map<std::string, std::size_t> resp_index_;
    ToleranceConfig tolerances_;
};

} // namespace ontoscope::ontic
