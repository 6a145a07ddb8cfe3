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

#include "ontoscope/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ontoscope/errors.hpp"

namespace ontoscope::lp {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Dense tableau with one extra rhs column and a separate reduced-cost row.
// basis_[r] names the variable currently basic in row r.
class Tableau {
  public:
    Tableau(std::size_t rows, std::size_t cols)
        : cols_(cols), rows_(rows, std::vector<double>(cols + 1, 0.0)),
          cost_(cols + 1, 0.0), basis_(rows, kNone) {}

    std::size_t num_rows() const { return rows_.size(); }
    std::size_t num_cols() const { return cols_; }
    std::vector<double>& row(std::size_t r) { return rows_[r]; }
    double rhs(std::size_t r) const { return rows_[r][cols_]; }
    double cost(std::size_t c) const { return cost_[c]; }
    double objective() const { return -cost_[cols_]; }
    std::size_t basic(std::size_t r) const { return basis_[r]; }

    void set_basis(std::size_t r, std::size_t var) { basis_[r] = var; }

    // Installs the cost vector and cancels the reduced costs of the
    // current basic variables so the row is consistent with the basis.
    void load_costs(const std::vector<double>& c) {
        std::fill(cost_.begin(), cost_.end(), 0.0);
        std::copy(c.begin(), c.end(), cost_.begin());
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const double cb = basis_[r] < c.size() ? c[basis_[r]] : 0.0;
            if (cb != 0.0) {
                for (std::size_t j = 0; j <= cols_; ++j) {
                    cost_[j] -= cb * rows_[r][j];
                }
            }
        }
    }

    void pivot(std::size_t r, std::size_t c) {
        auto& prow = rows_[r];
        const double inv = 1.0 / prow[c];
        for (double& v : prow) {
            v *= inv;
        }
        prow[c] = 1.0;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i != r) {
                eliminate(rows_[i], prow, c);
            }
        }
        eliminate(cost_, prow, c);
        basis_[r] = c;
    }

    // Bland's rule: enter at the lowest admissible column with a negative
    // reduced cost, leave at the minimum-ratio row, breaking ties toward
    // the lowest basic variable index.
    template <typename Admissible>
    Status iterate(std::size_t& pivots, std::size_t max_pivots, Admissible admissible) {
        while (true) {
            if (pivots >= max_pivots) {
                return Status::iteration_limit;
            }
            std::size_t enter = kNone;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (admissible(j) && cost_[j] < -kPivotTolerance) {
                    enter = j;
                    break;
                }
            }
            if (enter == kNone) {
                return Status::optimal;
            }
            std::size_t leave = kNone;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < rows_.size(); ++r) {
                const double a = rows_[r][enter];
                if (a > kPivotTolerance) {
                    const double ratio = rhs(r) / a;
                    if (ratio < best - kPivotTolerance ||
                        (ratio < best + kPivotTolerance &&
                         (leave == kNone || basis_[r] < basis_[leave]))) {
                        best = std::min(best, ratio);
                        leave = r;
                    }
                }
            }
            if (leave == kNone) {
                return Status::unbounded;
            }
            pivot(leave, enter);
            ++pivots;
        }
    }

  private:
    static void eliminate(std::vector<double>& target, const std::vector<double>& prow,
                          std::size_t c) {
        const double factor = target[c];
        if (factor == 0.0) {
            return;
        }
        for (std::size_t j = 0; j < target.size(); ++j) {
            target[j] -= factor * prow[j];
        }
        target[c] = 0.0;
    }

    std::size_t cols_;
    std::vector<std::vector<double>> rows_;
    std::vector<double> cost_;
    std::vector<std::size_t> basis_;
};

void validate(const LinearProgram& p) {
    if (p.num_vars == 0) {
        throw ValidationError("linear program needs at least one variable");
    }
    if (p.objective.size() != p.num_vars) {
        throw ValidationError("objective length does not match num_vars");
    }
    if (p.eq_rows.size() != p.eq_rhs.size()) {
        throw ValidationError("constraint rows and right-hand sides disagree");
    }
    for (const auto& row : p.eq_rows) {
        if (row.size() != p.num_vars) {
            throw ValidationError("constraint row length does not match num_vars");
        }
    }
    if (!p.upper_bounds.empty()) {
        if (p.upper_bounds.size() != p.num_vars) {
            throw ValidationError("upper_bounds length does not match num_vars");
        }
        for (double u : p.upper_bounds) {
            if (std::isnan(u) || u < 0.0) {
                throw ValidationError("upper bounds must be nonnegative");
            }
        }
    }
}

} // namespace

Solution solve(const LinearProgram& program, std::size_t max_pivots) {
    validate(program);

    // Finite upper bounds become explicit rows x_i + s_i = u_i, so the
    // tableau only ever sees equality constraints over nonnegative variables.
    std::vector<std::size_t> bounded;
    if (!program.upper_bounds.empty()) {
        for (std::size_t i = 0; i < program.num_vars; ++i) {
            if (std::isfinite(program.upper_bounds[i])) {
                bounded.push_back(i);
            }
        }
    }
    const std::size_t n_real = program.num_vars + bounded.size();
    const std::size_t m = program.eq_rows.size() + bounded.size();
    const std::size_t n_total = n_real + m; // artificials occupy the tail

    Tableau tab(m, n_total);
    for (std::size_t r = 0; r < program.eq_rows.size(); ++r) {
        auto& row = tab.row(r);
        const double sign = program.eq_rhs[r] < 0.0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < program.num_vars; ++j) {
            row[j] = sign * program.eq_rows[r][j];
        }
        row[n_total] = sign * program.eq_rhs[r];
    }
    for (std::size_t k = 0; k < bounded.size(); ++k) {
        auto& row = tab.row(program.eq_rows.size() + k);
        row[bounded[k]] = 1.0;
        row[program.num_vars + k] = 1.0;
        row[n_total] = program.upper_bounds[bounded[k]];
    }
    for (std::size_t r = 0; r < m; ++r) {
        tab.row(r)[n_real + r] = 1.0;
        tab.set_basis(r, n_real + r);
    }

    std::size_t pivots = 0;
    Solution result;

    // Phase one: minimize the total artificial mass.
    std::vector<double> phase1_cost(n_total, 0.0);
    std::fill(phase1_cost.begin() + static_cast<std::ptrdiff_t>(n_real), phase1_cost.end(), 1.0);
    tab.load_costs(phase1_cost);
    result.status = tab.iterate(pivots, max_pivots, [](std::size_t) { return true; });
    if (result.status != Status::optimal) {
        return result;
    }
    if (tab.objective() > kFeasibilityTolerance) {
        result.status = Status::infeasible;
        return result;
    }

    // Swap lingering artificials for real columns where the row allows it;
    // rows that refuse are redundant and keep a zero-valued artificial.
    for (std::size_t r = 0; r < m; ++r) {
        if (tab.basic(r) >= n_real) {
            for (std::size_t j = 0; j < n_real; ++j) {
                if (std::abs(tab.row(r)[j]) > kPivotTolerance) {
                    tab.pivot(r, j);
                    ++pivots;
                    break;
                }
            }
        }
    }

    // Phase two: the real objective, with artificial columns barred.
    std::vector<double> phase2_cost(n_total, 0.0);
    std::copy(program.objective.begin(), program.objective.end(), phase2_cost.begin());
    tab.load_costs(phase2_cost);
    result.status =
        tab.iterate(pivots, max_pivots, [n_real](std::size_t j) { return j < n_real; });
    if (result.status != Status::optimal) {
        return result;
    }

    result.x.assign(program.num_vars, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
        const std::size_t var = tab.basic(r);
        if (var < program.num_vars) {
            result.x[var] = std::max(0.0, tab.rhs(r));
        }
    }
    result.objective = 0.0;
    for (std::size_t j = 0; j < program.num_vars; ++j) {
        result.objective += program.objective[j] * result.x[j];
    }
    return result;
}

} // namespace ontoscope::lp
