#pragma once

// Two-phase bounded-variable revised simplex, dense. Row count stays small
// (moment rows); column count may be large (grid atoms). Returns vertex
// solutions, which callers rely on for extremal-support extraction.

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace condbound::conic {

struct LpProblem {
    // min c'x  s.t.  row_lo <= A x <= row_hi,  0 <= x <= upper
    Eigen::VectorXd c;
    Eigen::MatrixXd A;
    Eigen::VectorXd row_lo, row_hi;
    Eigen::VectorXd upper;  // +inf allowed
};

struct LpSolution {
    enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };
    Status status = Status::IterationLimit;
    Eigen::VectorXd x;      // structural variables only
    Eigen::VectorXd duals;  // one per row
    double objective = 0.0;
    std::vector<int> basis;  // basic structural variable indices (excludes slacks)
    long iterations = 0;
};

namespace detail {

class BoundedSimplex {
    static constexpr double kTol = 1e-9;

public:
    explicit BoundedSimplex(const LpProblem& prob, long max_iter) : max_iter_(max_iter) {
        const double inf = std::numeric_limits<double>::infinity();
        m_ = static_cast<int>(prob.A.rows());
        n_struct_ = static_cast<int>(prob.A.cols());

        // one slack per row turns ranges into equalities
        int n = n_struct_ + m_;
        A_.resize(m_, n + m_);  // + artificials appended later
        A_.setZero();
        A_.leftCols(n_struct_) = prob.A;
        b_.resize(m_);
        ub_ = Eigen::VectorXd::Constant(n + m_, inf);
        ub_.head(n_struct_) = prob.upper;
        for (int r = 0; r < m_; ++r) {
            double lo = prob.row_lo[r], hi = prob.row_hi[r];
            int sj = n_struct_ + r;
            if (std::isfinite(hi)) {
                A_(r, sj) = 1.0;
                b_[r] = hi;
                ub_[sj] = std::isfinite(lo) ? hi - lo : inf;
            } else if (std::isfinite(lo)) {
                A_(r, sj) = -1.0;
                b_[r] = lo;
                ub_[sj] = inf;
            } else {
                A_(r, sj) = 1.0;  // free row: unbounded slack both ways is not
                b_[r] = 0.0;      // needed by this library; treat as 0 == Ax + s
            }
        }
        n_ = n;
        c_ = Eigen::VectorXd::Zero(n + m_);
        c_.head(n_struct_) = prob.c;

        // artificials occupy the last m_ columns
        for (int r = 0; r < m_; ++r) {
            A_(r, n_ + r) = (b_[r] >= 0) ? 1.0 : -1.0;
            ub_[n_ + r] = inf;
        }
        n_total_ = n_ + m_;
        at_upper_.assign(static_cast<std::size_t>(n_total_), false);
        is_basic_.assign(static_cast<std::size_t>(n_total_), false);
        basis_.resize(static_cast<std::size_t>(m_));
        for (int r = 0; r < m_; ++r) {
            basis_[static_cast<std::size_t>(r)] = n_ + r;
            is_basic_[static_cast<std::size_t>(n_ + r)] = true;
        }
    }

    LpSolution solve() {
        LpSolution sol;
        // phase 1: drive artificials to zero
        Eigen::VectorXd phase1_cost = Eigen::VectorXd::Zero(n_total_);
        phase1_cost.tail(m_).setOnes();
        iterate(phase1_cost, true);
        if (iterations_ >= max_iter_) {
            sol.status = LpSolution::Status::IterationLimit;
            return sol;
        }
        double infeas = current_objective(phase1_cost);
        double scale = std::max(1.0, b_.cwiseAbs().maxCoeff());
        if (infeas > 1e-7 * scale) {
            sol.status = LpSolution::Status::Infeasible;
            sol.iterations = iterations_;
            return sol;
        }
        // freeze artificials at zero for phase 2
        for (int j = n_; j < n_total_; ++j) ub_[j] = 0.0;

        bool bounded = iterate(c_, false);
        sol.iterations = iterations_;
        if (iterations_ >= max_iter_) {
            sol.status = LpSolution::Status::IterationLimit;
            return sol;
        }
        if (!bounded) {
            sol.status = LpSolution::Status::Unbounded;
            return sol;
        }
        sol.status = LpSolution::Status::Optimal;
        Eigen::VectorXd xfull = current_point();
        sol.x = xfull.head(n_struct_);
        sol.objective = c_.dot(xfull);
        sol.duals = duals_;
        for (int r = 0; r < m_; ++r)
            if (basis_[static_cast<std::size_t>(r)] < n_struct_) sol.basis.push_back(basis_[static_cast<std::size_t>(r)]);
        return sol;
    }

private:
    double current_objective(const Eigen::VectorXd& cost) { return cost.dot(current_point()); }

    Eigen::VectorXd current_point() {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(n_total_);
        for (int j = 0; j < n_total_; ++j)
            if (!is_basic_[static_cast<std::size_t>(j)] && at_upper_[static_cast<std::size_t>(j)]) x[j] = ub_[j];
        Eigen::VectorXd rhs = b_;
        for (int j = 0; j < n_total_; ++j)
            if (x[j] != 0.0) rhs -= A_.col(j) * x[j];
        Eigen::MatrixXd B(m_, m_);
        for (int r = 0; r < m_; ++r) B.col(r) = A_.col(basis_[static_cast<std::size_t>(r)]);
        Eigen::VectorXd xb = B.partialPivLu().solve(rhs);
        for (int r = 0; r < m_; ++r) x[basis_[static_cast<std::size_t>(r)]] = xb[r];
        return x;
    }

    /// Runs simplex iterations for the given cost vector. Returns false when
    /// the problem is unbounded in that cost.
    bool iterate(const Eigen::VectorXd& cost, bool phase1) {
        const double inf = std::numeric_limits<double>::infinity();
        int degenerate_streak = 0;
        while (iterations_ < max_iter_) {
            ++iterations_;
            Eigen::MatrixXd B(m_, m_);
            Eigen::VectorXd cb(m_);
            for (int r = 0; r < m_; ++r) {
                B.col(r) = A_.col(basis_[static_cast<std::size_t>(r)]);
                cb[r] = cost[basis_[static_cast<std::size_t>(r)]];
            }
            Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
            duals_ = lu.transpose().solve(cb);

            // pricing
            Eigen::VectorXd d = cost - A_.transpose() * duals_;
            bool use_bland = degenerate_streak > 2 * m_ + 20;
            int enter = -1;
            double best = -kTol * std::max(1.0, cost.cwiseAbs().maxCoeff());
            for (int j = 0; j < n_total_; ++j) {
                if (is_basic_[static_cast<std::size_t>(j)] || ub_[j] == 0.0) continue;
                if (phase1 == false && j >= n_) continue;  // artificials frozen
                double viol = at_upper_[static_cast<std::size_t>(j)] ? -d[j] : d[j];
                if (viol < best) {
                    enter = j;
                    if (use_bland) break;
                    best = viol;
                }
            }
            if (enter < 0) return true;  // optimal for this cost

            bool entering_up = !at_upper_[static_cast<std::size_t>(enter)];
            Eigen::VectorXd rhs = b_;
            for (int j = 0; j < n_total_; ++j)
                if (!is_basic_[static_cast<std::size_t>(j)] && at_upper_[static_cast<std::size_t>(j)]) rhs -= A_.col(j) * ub_[j];
            Eigen::VectorXd xb = lu.solve(rhs);
            Eigen::VectorXd w = lu.solve(A_.col(enter));
            if (!entering_up) w = -w;

            // ratio test: entering moves by t >= 0 from its bound
            double t = ub_[enter];  // bound flip distance (may be inf)
            int leave = -1;
            bool leave_to_upper = false;
            for (int r = 0; r < m_; ++r) {
                int bj = basis_[static_cast<std::size_t>(r)];
                if (w[r] > kTol) {
                    double ratio = xb[r] / w[r];
                    if (ratio < t - 1e-12) {
                        t = std::max(ratio, 0.0);
                        leave = r;
                        leave_to_upper = false;
                    }
                } else if (w[r] < -kTol && std::isfinite(ub_[bj])) {
                    double ratio = (ub_[bj] - xb[r]) / (-w[r]);
                    if (ratio < t - 1e-12) {
                        t = std::max(ratio, 0.0);
                        leave = r;
                        leave_to_upper = true;
                    }
                }
            }
            if (t == inf) return false;  // unbounded ray
            degenerate_streak = (t < 1e-11) ? degenerate_streak + 1 : 0;

            if (leave < 0) {
                // bound flip of the entering variable
                at_upper_[static_cast<std::size_t>(enter)] = entering_up;
                continue;
            }
            int bj = basis_[static_cast<std::size_t>(leave)];
            is_basic_[static_cast<std::size_t>(bj)] = false;
            at_upper_[static_cast<std::size_t>(bj)] = leave_to_upper;
            basis_[static_cast<std::size_t>(leave)] = enter;
            is_basic_[static_cast<std::size_t>(enter)] = true;
            at_upper_[static_cast<std::size_t>(enter)] = false;
        }
        return true;
    }

    int m_ = 0, n_struct_ = 0, n_ = 0, n_total_ = 0;
    long max_iter_ = 0, iterations_ = 0;
    Eigen::MatrixXd A_;
    Eigen::VectorXd b_, c_, ub_, duals_;
    std::vector<int> basis_;
    std::vector<bool> is_basic_, at_upper_;
};

}  // namespace detail

/// Solve an LP to a vertex optimum with the simplex backend.
inline LpSolution solve_lp_vertex(const LpProblem& prob, long max_iterations = 200000) {
    detail::BoundedSimplex s(prob, max_iterations);
    return s.solve();
}

}  // namespace condbound::conic
