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

#include "ontoscope/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "ontoscope/errors.hpp"

namespace ontoscope::quantum {

namespace {

double squared_norm(const std::vector<Complex>& amps) {
    double s = 0.0;
    for (const auto& a : amps)
        s += std::norm(a);
    return s;
}

void require_same_dim(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim())
        throw DimensionError("state dimensions do not match: " +
                             std::to_string(a.dim()) + " vs " +
                             std::to_string(b.dim()));
}

} // namespace

StateVector::StateVector(std::vector<Complex> amplitudes)
    : amps_(std::move(amplitudes)) {
    if (amps_.size() < 2)
        throw ValidationError("a state vector needs dimension >= 2");
    const double n2 = squared_norm(amps_);
    if (std::abs(n2 - 1.0) > kNormTolerance)
        throw ValidationError("state vector is not normalized (|norm^2 - 1| = " +
                              std::to_string(std::abs(n2 - 1.0)) + ")");
}

StateVector StateVector::normalized(std::vector<Complex> amplitudes) {
    const double n2 = squared_norm(amplitudes);
    if (n2 <= 0.0)
        throw ValidationError("cannot normalize the zero vector");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : amplitudes)
        a *= inv;
    return StateVector(std::move(amplitudes));
}

Complex inner_product(const StateVector& bra, const StateVector& ket) {
    require_same_dim(bra, ket);
    Complex acc{0.0, 0.0};
    const auto& b = bra.amplitudes();
    const auto& k = ket.amplitudes();
    for (std::size_t i = 0; i < b.size(); ++i)
        acc += std::conj(b[i]) * k[i];
    return acc;
}

double born_probability(const StateVector& psi, const StateVector& phi) {
    return std::norm(inner_product(phi, psi));
}

Indeterminism i_quantum(const StateVector& psi, const StateVector& phi) {
    const double v = std::norm(inner_product(psi, phi));
    const bool indet =
        v > kDeterministicTolerance && v < 1.0 - kDeterministicTolerance;
    return {v, indet};
}

ProjectiveObservable::ProjectiveObservable(std::vector<std::string> outcome_labels,
                                           std::vector<StateVector> eigenstates)
    : dim_(0), labels_(std::move(outcome_labels)),
      eigenstates_(std::move(eigenstates)) {
    if (eigenstates_.empty())
        throw ValidationError("an observable needs at least one eigenstate");
    if (labels_.size() != eigenstates_.size())
        throw ValidationError("outcome label count does not match eigenstate count");

    dim_ = eigenstates_.front().dim();
    for (const auto& e : eigenstates_)
        if (e.dim() != dim_)
            throw DimensionError("observable eigenstates live in different dimensions");
    if (eigenstates_.size() > static_cast<std::size_t>(dim_))
        throw ValidationError("more eigenstates than the dimension allows");

    std::unordered_set<std::string> seen;
    for (const auto& l : labels_) {
        if (l == kFailOutcome)
            throw ValidationError("outcome label \"fail\" is reserved for the implicit complement");
        if (!seen.insert(l).second)
            throw ValidationError("duplicate outcome label: " + l);
    }

    for (std::size_t j = 0; j + 1 < eigenstates_.size(); ++j)
        for (std::size_t k = j + 1; k < eigenstates_.size(); ++k)
            if (std::abs(inner_product(eigenstates_[j], eigenstates_[k])) > kOrthoTolerance)
                throw ValidationError("eigenstates \"" + labels_[j] + "\" and \"" +
                                      labels_[k] + "\" are not orthogonal");
}

std::vector<std::pair<std::string, double>>
outcome_distribution(const StateVector& psi, const ProjectiveObservable& obs) {
    if (psi.dim() != obs.dim())
        throw DimensionError("state and observable dimensions do not match");
    std::vector<std::pair<std::string, double>> dist;
    dist.reserve(obs.outcome_count() + 1);
    double total = 0.0;
    for (std::size_t k = 0; k < obs.outcome_count(); ++k) {
        const double p = born_probability(psi, obs.eigenstate(k));
        total += p;
        dist.emplace_back(obs.outcome_label(k), p);
    }
    if (!obs.is_complete())
        dist.emplace_back(kFailOutcome, 1.0 - total);
    return dist;
}

double guessing_probability(const StateVector& psi, const ProjectiveObservable& obs) {
    double best = 0.0;
    for (const auto& [label, p] : outcome_distribution(psi, obs))
        best = std::max(best, p);
    return best;
}

double min_entropy(const StateVector& psi, const ProjectiveObservable& obs) {
    const double h = -std::log2(guessing_probability(psi, obs));
    return h == 0.0 ? 0.0 : h; // fold -0.0
}

} // namespace ontoscope::quantum
