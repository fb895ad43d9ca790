#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "cvxpoly/errors.hpp"
#include "cvxpoly/linalg.hpp"

namespace cvxpoly {

// Dense two-phase primal simplex for
//     maximize c'x  subject to  A x = b,  x >= 0.
//
// Pricing is Dantzig (largest reduced profit) until the objective stalls on
// degenerate pivots, then Bland's rule, which guarantees termination. All
// tie-breaks are by smallest index, so the pivot sequence is deterministic.

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Optimal;
    Vec x;                 // structural variable values
    double objective = 0;  // c'x at the optimum
    Vec row_multipliers;   // y with y'A = c_B' B^-1 A (duals of the equality rows)
    std::vector<int> basis;
};

struct LpOptions {
    double tol_cost = 1e-10;
    double tol_pivot = 1e-11;
    int max_iters = 200000;
    int stall_limit = 64;  // degenerate pivots before switching to Bland
};

class SimplexSolver {
  public:
    SimplexSolver(Matrix A, Vec b, Vec c, LpOptions opts = {})
        : m_(A.rows()), n_(A.cols()), opts_(opts), cost_(std::move(c)) {
        flip_.assign(m_, 1.0);
        for (int i = 0; i < m_; ++i)
            if (b[i] < 0) {
                flip_[i] = -1.0;
                b[i] = -b[i];
                for (int j = 0; j < n_; ++j) A(i, j) = -A(i, j);
            }
        total_ = n_ + m_;  // structural + one artificial per row
        tab_.assign(static_cast<std::size_t>(m_) * total_, 0.0);
        rhs_ = std::move(b);
        for (int i = 0; i < m_; ++i) {
            for (int j = 0; j < n_; ++j) at(i, j) = A(i, j);
            at(i, n_ + i) = 1.0;
        }
        basis_.resize(m_);
        for (int i = 0; i < m_; ++i) basis_[i] = n_ + i;
    }

    LpResult solve() {
        LpResult res;
        // Phase 1: maximize -sum(artificials).
        Vec c1(total_, 0.0);
        for (int j = n_; j < total_; ++j) c1[j] = -1.0;
        double obj1 = run_phase(c1, /*allow_artificial=*/true);
        if (obj1 < -1e-7) {
            res.status = LpStatus::Infeasible;
            return res;
        }
        // Phase 2 on the original costs; artificials may stay basic at zero but
        // are barred from entering.
        Vec c2(total_, 0.0);
        for (int j = 0; j < n_; ++j) c2[j] = cost_[j];
        double obj2 = run_phase(c2, /*allow_artificial=*/false);
        if (unbounded_) {
            res.status = LpStatus::Unbounded;
            return res;
        }
        res.status = LpStatus::Optimal;
        res.objective = obj2;
        res.x.assign(n_, 0.0);
        for (int i = 0; i < m_; ++i)
            if (basis_[i] < n_) res.x[basis_[i]] = rhs_[i];
        // y_i = c_B' B^-1 e_i, read off the artificial columns; undo row flips.
        res.row_multipliers.assign(m_, 0.0);
        for (int i = 0; i < m_; ++i) {
            double y = 0.0;
            for (int k = 0; k < m_; ++k) y += c2[basis_[k]] * at(k, n_ + i);
            res.row_multipliers[i] = y * flip_[i];
        }
        res.basis = basis_;
        return res;
    }

  private:
    double& at(int i, int j) { return tab_[static_cast<std::size_t>(i) * total_ + j]; }
    double at(int i, int j) const { return tab_[static_cast<std::size_t>(i) * total_ + j]; }

    // Runs simplex iterations for the given cost vector; returns the objective.
    double run_phase(const Vec& c, bool allow_artificial) {
        unbounded_ = false;
        // Reduced profits rho_j = c_j - c_B' (B^-1 a_j) from the current tableau.
        Vec rho(total_);
        double obj = 0.0;
        for (int i = 0; i < m_; ++i) obj += c[basis_[i]] * rhs_[i];
        for (int j = 0; j < total_; ++j) {
            double z = 0.0;
            for (int i = 0; i < m_; ++i) z += c[basis_[i]] * at(i, j);
            rho[j] = c[j] - z;
        }
        int stall = 0;
        bool bland = false;
        const int limit_j = allow_artificial ? total_ : n_;
        for (int iter = 0; iter < opts_.max_iters; ++iter) {
            int enter = -1;
            if (bland) {
                for (int j = 0; j < limit_j; ++j)
                    if (rho[j] > opts_.tol_cost) {
                        enter = j;
                        break;
                    }
            } else {
                double best = opts_.tol_cost;
                for (int j = 0; j < limit_j; ++j)
                    if (rho[j] > best) {
                        best = rho[j];
                        enter = j;
                    }
            }
            if (enter < 0) return obj;  // optimal for this phase

            int leave = -1;
            double best_ratio = 0.0;
            for (int i = 0; i < m_; ++i) {
                const double a = at(i, enter);
                if (a > opts_.tol_pivot) {
                    const double ratio = rhs_[i] / a;
                    if (leave < 0 || ratio < best_ratio - 1e-15 ||
                        (ratio <= best_ratio + 1e-15 && basis_[i] < basis_[leave])) {
                        leave = i;
                        best_ratio = ratio;
                    }
                }
            }
            if (leave < 0) {
                unbounded_ = true;
                return obj;
            }
            if (best_ratio <= 1e-13) {
                if (++stall >= opts_.stall_limit) bland = true;
            } else {
                stall = 0;
            }
            pivot(leave, enter, rho, obj);
        }
        throw InternalError("simplex: iteration limit exceeded");
    }

    void pivot(int r, int enter, Vec& rho, double& obj) {
        const double p = at(r, enter);
        const double inv = 1.0 / p;
        for (int j = 0; j < total_; ++j) at(r, j) *= inv;
        rhs_[r] *= inv;
        at(r, enter) = 1.0;
        for (int i = 0; i < m_; ++i) {
            if (i == r) continue;
            const double f = at(i, enter);
            if (f == 0.0) continue;
            for (int j = 0; j < total_; ++j) at(i, j) -= f * at(r, j);
            at(i, enter) = 0.0;
            rhs_[i] -= f * rhs_[r];
            if (rhs_[i] < 0 && rhs_[i] > -1e-12) rhs_[i] = 0.0;
        }
        const double f = rho[enter];
        for (int j = 0; j < total_; ++j) rho[j] -= f * at(r, j);
        rho[enter] = 0.0;
        obj += f * rhs_[r];
        basis_[r] = enter;
    }

    int m_, n_, total_;
    LpOptions opts_;
    Vec cost_;
    std::vector<double> tab_;
    Vec rhs_;
    Vec flip_;
    std::vector<int> basis_;
    bool unbounded_ = false;
};

inline LpResult solve_lp(Matrix A, Vec b, Vec c, LpOptions opts = {}) {
    return SimplexSolver(std::move(A), std::move(b), std::move(c), opts).solve();
}

} // namespace cvxpoly
