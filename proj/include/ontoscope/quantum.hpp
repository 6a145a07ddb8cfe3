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
 * Operational quantum layer: pure states, projective observables, outcome
 * statistics and the randomness quantities derived from them.
 *
 * Everything here is a pure function on immutable values; all quantities are
 * invariant under a global phase of the state.
 */

#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace ontoscope::quantum {

using Complex = std::complex<double>;

/// Construction-time normalization tolerance for states.
inline constexpr double kNormTolerance = 1e-12;
/// Pairwise orthogonality tolerance for observable eigenstates.
inline constexpr double kOrthoTolerance = 1e-10;
/// Probabilities within this distance of 0 or 1 count as deterministic.
inline constexpr double kDeterministicTolerance = 1e-10;
/// Reserved label for the implicit complement outcome of an incomplete filter.
inline constexpr const char* kFailOutcome = "fail";

/// A normalized ray in a d-dimensional complex Hilbert space.
///
/// Normalization is validated once at construction; all operations may then
/// assume unit norm.
class StateVector {
  public:
    /// Validates dim >= 2 and unit norm within kNormTolerance.
    explicit StateVector(std::vector<Complex> amplitudes);

    /// Rescales the amplitudes to unit norm, then constructs.
    static StateVector normalized(std::vector<Complex> amplitudes);

    int dim() const { return static_cast<int>(amps_.size()); }
    const std::vector<Complex>& amplitudes() const { return amps_; }

  private:
    std::vector<Complex> amps_;
};

/// <bra|ket>. Throws DimensionError on mismatched dimensions.
Complex inner_product(const StateVector& bra, const StateVector& ket);

/// |<phi|psi>|^2, the probability that psi passes the filter onto phi.
/// Symmetric in its arguments.
double born_probability(const StateVector& psi, const StateVector& phi);

struct Indeterminism {
    double value = 0.0;       ///< |<psi|phi>|^2
    bool indeterministic = false; ///< true iff value is neither 0 nor 1
};

/// Operational indeterminism of the preparation-filter pair (psi, phi).
Indeterminism i_quantum(const StateVector& psi, const StateVector& phi);

/// A projective observable given by 1..d mutually orthonormal eigenstates.
///
/// With fewer than d eigenstates the observable acts as a filter and gains
/// an implicit complement outcome labeled "fail".
class ProjectiveObservable {
  public:
    ProjectiveObservable(std::vector<std::string> outcome_labels,
                         std::vector<StateVector> eigenstates);

    int dim() const { return dim_; }
    std::size_t outcome_count() const { return eigenstates_.size(); }
    bool is_complete() const {
        return eigenstates_.size() == static_cast<std::size_t>(dim_);
    }
    const StateVector& eigenstate(std::size_t k) const { return eigenstates_[k]; }
    const std::string& outcome_label(std::size_t k) const { return labels_[k]; }

  private:
    int dim_;
    std::vector<std::string> labels_;
    std::vector<StateVector> eigenstates_;
};

/// Per-outcome probabilities, including the implicit "fail" outcome when the
/// observable is incomplete. The probabilities sum to 1.
std::vector<std::pair<std::string, double>>
outcome_distribution(const StateVector& psi, const ProjectiveObservable& obs);

/// Largest outcome probability of the full distribution.
double guessing_probability(const StateVector& psi, const ProjectiveObservable& obs);

/// -log2 of the guessing probability, in bits. Zero iff one outcome is certain.
double min_entropy(const StateVector& psi, const ProjectiveObservable& obs);

} // namespace ontoscope::quantum
