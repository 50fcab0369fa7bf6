// Two-phase primal simplex over exact rationals, dense tableau, Bland's
// smallest-index pivot rule (which precludes cycling).
//
// Solves: maximize c·x subject to rows a_i·x {≤, ≥, =} b_i and x ≥ 0.
// Infeasible problems come with a certificate of row multipliers y:
//   y_i ≤ 0 for ≤ rows, y_i ≥ 0 for ≥ rows, y_i free for = rows,
//   Σ_i y_i·a_i ≤ 0 componentwise, and Σ_i y_i·b_i > 0,
// which together contradict any x ≥ 0 satisfying the rows.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "palc/rational.hpp"

namespace palc::lp {

enum class Rel : std::uint8_t { Le, Ge, Eq };

struct Constraint {
    std::vector<Rat> coeffs;  // shorter vectors are zero-padded to num_vars
    Rel rel = Rel::Le;
    Rat rhs = 0;
};

struct Problem {
    std::size_t num_vars = 0;
    std::vector<Rat> objective;  // maximize objective · x
    std::vector<Constraint> rows;
};

enum class Status : std::uint8_t { Optimal, Infeasible, Unbounded };

struct Solution {
    Status status = Status::Infeasible;
    Rat objective = 0;        // meaningful when Optimal
    std::vector<Rat> x;       // meaningful when Optimal
    std::vector<Rat> farkas;  // meaningful when Infeasible; see header comment
};

namespace detail {

class SimplexTableau {
public:
    explicit SimplexTableau(const Problem& p) : nv_(p.num_vars) {
        if (p.objective.size() > nv_)
            throw std::invalid_argument("objective longer than variable count");
        for (const Constraint& c : p.rows)
            if (c.coeffs.size() > nv_)
                throw std::invalid_argument("constraint row longer than variable count");
        build(p);
    }

    Solution run(const Problem& p) {
        if (!artificial_rows_.empty()) {
            Solution infeasible;
            if (!phase_one(infeasible)) return infeasible;
        }
        return phase_two(p);
    }

private:
    // Standard form: one equality row per input row with rhs ≥ 0, a slack or
    // surplus column per inequality, and an artificial column wherever no
    // natural basic variable exists.  flip_[i] records the sign relating the
    // standardized row to the input row, for certificate mapping.
    void build(const Problem& p) {
        const std::size_t m = p.rows.size();
        rows_.assign(m, {});
        rhs_.assign(m, Rat(0));
        basis_.assign(m, 0);
        flip_.assign(m, Rat(1));

        std::size_t slack_count = 0;
        for (const Constraint& c : p.rows)
            if (c.rel != Rel::Eq) ++slack_count;
        struct_cols_ = nv_ + slack_count;

        std::size_t next_slack = nv_;
        std::vector<std::size_t> needs_artificial;
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<Rat> a(struct_cols_, Rat(0));
            for (std::size_t j = 0; j < p.rows[i].coeffs.size(); ++j) a[j] = p.rows[i].coeffs[j];
            Rat b = p.rows[i].rhs;
            Rel rel = p.rows[i].rel;
            if (b < 0) {
                for (Rat& v : a) v = -v;
                b = -b;
                flip_[i] = -flip_[i];
                if (rel == Rel::Le)
                    rel = Rel::Ge;
                else if (rel == Rel::Ge)
                    rel = Rel::Le;
            }
            if (rel == Rel::Le) {
                a[next_slack] = 1;
                basis_[i] = next_slack++;
            } else if (rel == Rel::Ge) {
                if (b == 0) {
                    for (Rat& v : a) v = -v;
                    flip_[i] = -flip_[i];
                    a[next_slack] = 1;
                    basis_[i] = next_slack++;
                } else {
                    a[next_slack] = -1;
                    ++next_slack;
                    needs_artificial.push_back(i);
                }
            } else {
                needs_artificial.push_back(i);
            }
            rows_[i] = std::move(a);
            rhs_[i] = b;
        }

        total_cols_ = struct_cols_ + needs_artificial.size();
        for (std::size_t i = 0; i < m; ++i) rows_[i].resize(total_cols_, Rat(0));
        std::size_t next_art = struct_cols_;
        for (std::size_t i : needs_artificial) {
            rows_[i][next_art] = 1;
            basis_[i] = next_art;
            artificial_rows_.push_back(i);
            ++next_art;
        }
        init_basic_ = basis_;
    }

    // Reduced costs z_j = c_j - c_B · column_j and objective value c_B · rhs,
    // recomputed from scratch; the pivot itself is already O(m·n), so this
    // does not change the complexity and avoids incremental-update state.
    void compute_reduced(const std::vector<Rat>& cost, std::vector<Rat>& z, Rat& value) const {
        z.assign(total_cols_, Rat(0));
        value = 0;
        for (std::size_t j = 0; j < total_cols_; ++j) z[j] = cost[j];
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Rat& cb = cost[basis_[i]];
            if (cb == 0) continue;
            for (std::size_t j = 0; j < total_cols_; ++j) z[j] -= cb * rows_[i][j];
            value += cb * rhs_[i];
        }
    }

    void pivot(std::size_t r, std::size_t col) {
        const Rat inv = Rat(1) / rows_[r][col];
        for (Rat& v : rows_[r]) v *= inv;
        rhs_[r] *= inv;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i == r || rows_[i][col] == 0) continue;
            const Rat factor = rows_[i][col];
            for (std::size_t j = 0; j < total_cols_; ++j) rows_[i][j] -= factor * rows_[r][j];
            rhs_[i] -= factor * rhs_[r];
        }
        basis_[r] = col;
    }

    // Bland's rule: entering column = smallest eligible index with positive
    // reduced cost; leaving row = smallest ratio, ties by smallest basic
    // variable index.  Returns Optimal or Unbounded.
    Status optimize(const std::vector<Rat>& cost, std::size_t eligible_cols, std::vector<Rat>& z,
                    Rat& value) {
        for (std::size_t guard = 0;; ++guard) {
            if (guard > kPivotGuard)
                throw std::logic_error("simplex exceeded the pivot guard; cycling suspected");
            compute_reduced(cost, z, value);
            std::size_t enter = eligible_cols;
            for (std::size_t j = 0; j < eligible_cols; ++j) {
                if (z[j] > 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == eligible_cols) return Status::Optimal;
            std::size_t leave = rows_.size();
            Rat best_ratio = 0;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                if (rows_[i][enter] <= 0) continue;
                Rat ratio = rhs_[i] / rows_[i][enter];
                if (leave == rows_.size() || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave == rows_.size()) return Status::Unbounded;
            pivot(leave, enter);
        }
    }

    // Returns true when a feasible basis was reached; otherwise fills `out`
    // with the infeasibility certificate.
    bool phase_one(Solution& out) {
        std::vector<Rat> cost(total_cols_, Rat(0));
        for (std::size_t j = struct_cols_; j < total_cols_; ++j) cost[j] = -1;
        std::vector<Rat> z;
        Rat value;
        // Artificial columns never enter; they may only leave.
        if (optimize(cost, struct_cols_, z, value) == Status::Unbounded)
            throw std::logic_error("phase 1 objective is bounded by construction");
        if (value < 0) {
            out.status = Status::Infeasible;
            out.farkas.assign(rows_.size(), Rat(0));
            // Multipliers y_std_i = cost(init basic of row i) - z(init basic
            // of row i); under the initial identity columns the reduced-cost
            // row reads c_j - y_i.  Mapped back through the row flips.
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                std::size_t col = init_basic_col(i);
                Rat y_std = cost[col] - z[col];
                out.farkas[i] = -flip_[i] * y_std;
            }
            return false;
        }
        // Drive leftover artificials out of the basis; rows where that is
        // impossible are redundant and get dropped.
        for (std::size_t i = rows_.size(); i-- > 0;) {
            if (basis_[i] < struct_cols_) continue;
            std::size_t col = struct_cols_;
            for (std::size_t j = 0; j < struct_cols_; ++j) {
                if (rows_[i][j] != 0) {
                    col = j;
                    break;
                }
            }
            if (col < struct_cols_) {
                pivot(i, col);
            } else {
                rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
                rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
            }
        }
        return true;
    }

    Solution phase_two(const Problem& p) {
        std::vector<Rat> cost(total_cols_, Rat(0));
        for (std::size_t j = 0; j < p.objective.size(); ++j) cost[j] = p.objective[j];
        std::vector<Rat> z;
        Rat value;
        Status st = optimize(cost, struct_cols_, z, value);
        Solution out;
        out.status = st;
        if (st != Status::Optimal) return out;
        out.objective = value;
        out.x.assign(nv_, Rat(0));
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (basis_[i] < nv_) out.x[basis_[i]] = rhs_[i];
        return out;
    }

    std::size_t init_basic_col(std::size_t row) const { return init_basic_[row]; }

    static constexpr std::size_t kPivotGuard = 200000;

    std::size_t nv_;
    std::size_t struct_cols_ = 0;
    std::size_t total_cols_ = 0;
    std::vector<std::vector<Rat>> rows_;
    std::vector<Rat> rhs_;
    std::vector<std::size_t> basis_;
    std::vector<Rat> flip_;
    std::vector<std::size_t> artificial_rows_;
    std::vector<std::size_t> init_basic_;
};

}  // namespace detail

inline Solution solve(const Problem& p) {
    detail::SimplexTableau t(p);
    return t.run(p);
}

}  // namespace palc::lp
