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
 * Built-in model constructors and the linear-feasibility synthesizer.
 *
 * A Scenario is the finite collection of labeled quantum states over which
 * models are built and audited; each state serves as both a preparation and
 * a filter. Two constructions are built in: the sphere-grid qubit model
 * with hemisphere indicator responses (outcome-deterministic and reciprocal)
 * and the atomic model whose ontic points are the quantum states themselves
 * (reciprocal but outcome-indeterministic). A synthesizer searches for
 * further atomic models under user-declared support constraints.
 */

#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "ontoscope/ontic.hpp"
#include "ontoscope/quantum.hpp"

namespace ontoscope::models {

/// Default sphere-grid resolution.
inline constexpr std::size_t kDefaultGridSize = 20000;
/// Coarser grids are rejected; the discretization error would swamp audits.
inline constexpr std::size_t kMinGridSize = 100;
/// Two states whose overlap exceeds 1 minus this are the same ray.
inline constexpr double kDuplicateRayTolerance = 1e-12;

struct LabeledState {
    std::string label;
    quantum::StateVector state;
};

/// A finite preparation-measurement collection: the states every model in a
/// run must reproduce the Born rule on.
class Scenario {
  public:
    /// Validates dim >= 2, at least one state, per-state dimension match,
    /// distinct nonempty labels, and grid_size >= kMinGridSize.
    Scenario(int dim, std::vector<LabeledState> states,
             std::size_t grid_size = kDefaultGridSize);

    int dim() const { return dim_; }
    std::size_t grid_size() const { return grid_size_; }
    const std::vector<LabeledState>& states() const { return states_; }
    std::vector<std::string> labels() const;
    bool has_label(const std::string& label) const;
    const quantum::StateVector& state(const std::string& label) const;

  private:
    int dim_ = 0;
    std::size_t grid_size_ = kDefaultGridSize;
    std::vector<LabeledState> states_;
    std::map<std::string, std::size_t> index_;
};

/// Bloch vector (2 Re(a*b), 2 Im(a*b), |a|^2 - |b|^2) of a qubit state (a, b).
std::array<double, 3> bloch_vector(const quantum::StateVector& state);

/// Sphere-grid qubit model: density (1/pi) max(0, psi_hat . lambda), response
/// the indicator of the open hemisphere phi_hat . lambda > 0. Densities are
/// renormalized on the grid so each preparation carries mass exactly 1.
///
/// Throws UnsupportedDimension unless scenario.dim() == 2.
ontic::OntologicalModel build_ks_qubit(const Scenario& scenario);

/// Atomic model with one ontic point per scenario state: the epistemic state
/// is a point mass at the state's own atom and the response at atom s is the
/// Born probability |<phi|s>|^2. Reproduces the Born rule exactly.
///
/// Throws ValidationError when two labels name the same ray.
ontic::OntologicalModel build_bb_ontic(const Scenario& scenario);

/// Support constraints handed to the synthesizer. Row j of allowed_support
/// lists the ontic points preparation j may weight; row k of required_core
/// lists the points where filter k is pinned to 1.
struct SupportPattern {
    std::vector<std::vector<bool>> allowed_support;
    std::vector<std::vector<bool>> required_core;

    /// One atom per state, support and core both pinned to the own atom.
    static SupportPattern bb_style(std::size_t n_states);

    /// Throws ValidationError unless both matrices are n_states by n_points,
    /// every preparation allows at least one point, and each required core
    /// row is contained in the matching allowed-support row.
    void validate(std::size_t n_states, std::size_t n_points) const;
};

enum class SynthesisObjective {
    feasibility,       ///< any model meeting the constraints
    max_total_overlap, ///< additionally maximize epistemic mass on allowed filter regions
};

struct SynthesisOptions {
    double eps_residual = 1e-10; ///< convergence target for the worst Born residual
    std::size_t max_iterations = 50;
};

struct SynthesisResult {
    ontic::OntologicalModel model;
    double max_born_residual = 0.0;
    std::size_t iterations = 0;
};

/// Searches for an atomic model over n_points abstract ontic points whose
/// epistemic states respect the allowed-support pattern, whose responses are
/// pinned to 1 on the required cores, and which reproduces the Born rule on
/// every ordered scenario pair.
///
/// The Born constraints are bilinear in (mu, xi), so the search alternates
/// two linear stages: responses are re-solved against the current epistemic
/// states, then epistemic states against the new responses, each stage
/// minimizing the total absolute Born residual. The seed epistemic state is
/// uniform over each preparation's allowed points. Throws SynthesisFailure,
/// carrying the best residual reached, when the residual target is not met
/// within the iteration cap or the constraints are contradictory.
SynthesisResult synthesize_model(const Scenario& scenario, std::size_t n_points,
                                 const SupportPattern& pattern,
                                 SynthesisObjective objective = SynthesisObjective::feasibility,
                                 const SynthesisOptions& options = SynthesisOptions{});

} // namespace ontoscope::models
