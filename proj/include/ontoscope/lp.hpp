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
 * Small dense linear programming solver.
 *
 * Solves min c.x subject to A x = b, 0 <= x, and optional per-variable
 * upper bounds, via the two-phase primal simplex method on a dense tableau.
 * Bland's rule guards against cycling. Intended for the atom-scale programs
 * produced by model synthesis, not for large sparse systems.
 */

#pragma once

#include <cstddef>
#include <vector>

namespace ontoscope::lp {

/// Entries below this magnitude are treated as zero during pivoting.
inline constexpr double kPivotTolerance = 1e-9;
/// A phase-one optimum above this value marks the program infeasible.
inline constexpr double kFeasibilityTolerance = 1e-8;

/// min objective . x  with  eq_rows[r] . x = eq_rhs[r]  and  0 <= x <= upper_bounds.
///
/// upper_bounds may be empty (all variables unbounded above) or hold one
/// entry per variable, with infinity marking an unbounded variable.
struct LinearProgram {
    std::size_t num_vars = 0;
    std::vector<double> objective;
    std::vector<std::vector<double>> eq_rows;
    std::vector<double> eq_rhs;
    std::vector<double> upper_bounds;
};

enum class Status { optimal, infeasible, unbounded, iteration_limit };

struct Solution {
    Status status = Status::iteration_limit;
    std::vector<double> x;
    double objective = 0.0;
};

/// Runs the two-phase simplex method. x and objective are meaningful only
/// when status is optimal.
Solution solve(const LinearProgram& program, std::size_t max_pivots = 50000);

} // namespace ontoscope::lp
