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
 * Quantitative audits of ontological models.
 *
 * The central quantities for an ordered state pair (psi, phi):
 *
 *   i_q      quantum indeterminism |<psi|phi>|^2,
 *   omega    degree of epistemicity: the fraction of i_q accounted for by
 *            the epistemic mass mu(.|psi) sitting on Lambda_phi,
 *   i_ont    ontological indeterminism: the Born mass contributed by the
 *            region where the filter is genuinely probabilistic,
 *            Lambda_psi intersected with (Supp \ Core) of phi's filter.
 *
 * For reciprocal models these satisfy i_ont = (1 - omega) i_q, and in
 * dimension d every reciprocal model obeys i_ont >= c(d) i_q with
 * c(d) = (d-2)^2 / (d^2 + (d-2)^2) under basis-independence of omega.
 * classify() measures all of this per pair and names the model's regime.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ontoscope/models.hpp"
#include "ontoscope/ontic.hpp"

namespace ontoscope::audit {

enum class Classification {
    psi_ontic,                ///< every defined omega is 0: epistemic states never overlap
    maximally_psi_epistemic,  ///< every defined omega is 1: overlap fully explains i_q
    nonmaximal_psi_epistemic, ///< every defined omega strictly between 0 and 1
    mixed,                    ///< pairs land in different regimes
};

std::string to_string(Classification classification);

/// Everything measured for one ordered (psi, phi) pair.
struct PairAudit {
    std::string psi_label;
    std::string phi_label;
    double i_q = 0.0;
    std::optional<double> omega; ///< empty for orthogonal pairs or failed certainty
    double i_ont = 0.0;
    double born_residual = 0.0;
    double decomposition_residual = 0.0;
    std::optional<double> identity_residual; ///< empty unless reciprocal and omega defined
    std::size_t lambda_r_size = 0;
    /// Informational: measured i_ont below the dimension floor c(d) i_q.
    /// Signals basis-dependence of omega or a tolerance artifact, not a bug.
    bool below_dimension_floor = false;
};

struct AuditFlags {
    bool certainty_all = false;
    bool reciprocal_all = false;
    bool deterministic_all = false;
    /// Reciprocal AND deterministic must coincide with the maximally
    /// psi-epistemic classification; false marks a hard audit error.
    bool classification_consistent = false;
};

struct AuditReport {
    std::string model;
    int dim = 0;
    AuditFlags flags;
    Classification classification = Classification::mixed;
    double bound_constant = 0.0;
    double omega_d_bound = 0.0;
    std::vector<PairAudit> pairs;
    ontic::ToleranceConfig tolerances;
    std::vector<std::string> notes;
};

/// Degree of epistemicity: epistemic mass of psi on Lambda_phi divided by
/// i_q. Empty when i_q < eps_residual (the defining ratio degenerates).
/// Throws CertaintyViolation when phi's own filter fails quantum certainty,
/// since Lambda_phi only carries meaning under certainty.
std::optional<double> omega(const ontic::OntologicalModel& model,
                            const models::Scenario& scenario, const std::string& psi_label,
                            const std::string& phi_label);

/// Indices of Lambda_psi intersected with (Supp \ Core) of phi's filter:
/// the ontic region where phi's outcome is genuinely probabilistic for psi.
std::vector<std::size_t> lambda_r_indices(const ontic::OntologicalModel& model,
                                          const std::string& psi_label,
                                          const std::string& phi_label);

/// Born mass contributed by lambda_r_indices. Nonnegative; exactly zero
/// whenever the filter is outcome-deterministic.
double i_ont(const ontic::OntologicalModel& model, const std::string& psi_label,
             const std::string& phi_label);

/// Residual of the certainty-only mass split: the epistemic mass on phi's
/// core plus i_ont must equal i_q. Valid without reciprocity.
double decomposition_check(const ontic::OntologicalModel& model,
                           const models::Scenario& scenario, const std::string& psi_label,
                           const std::string& phi_label);

/// Residual of i_ont = (1 - omega) i_q. Throws NonReciprocalModel unless
/// both states pass the reciprocity check (the relation is only asserted
/// for reciprocal models) and OrthogonalPair when omega is undefined.
double identity_check(const ontic::OntologicalModel& model, const models::Scenario& scenario,
                      const std::string& psi_label, const std::string& phi_label);

/// Dimension floor (d-2)^2 / (d^2 + (d-2)^2) on i_ont / i_q for reciprocal
/// models: 0 at d = 2, exactly 0.1 at d = 3, approaching 0.5 as d grows.
/// Supported for 2 <= d <= 1e9; throws DomainError outside.
double bound_constant(std::int64_t d);

/// Dimension ceiling d^2 / (2d^2 - 4d + 4) on the basis-independent degree
/// of epistemicity; 1 minus this equals bound_constant(d). Same domain.
double maroney_omega_bound(std::int64_t d);

/// Full audit: verifies Born reproduction on every ordered scenario pair
/// (throwing BornViolation with the worst pair otherwise), measures every
/// ordered non-equal pair, sets the flags, and classifies the model over
/// the pairs with defined omega.
///
/// Pair audits run in parallel; max_threads = 0 defers to the
/// ONTOSCOPE_THREADS environment variable, then hardware concurrency.
/// The report is deterministic regardless of thread count.
AuditReport classify(const ontic::OntologicalModel& model, const models::Scenario& scenario,
                     unsigned max_threads = 0);

} // namespace ontoscope::audit
