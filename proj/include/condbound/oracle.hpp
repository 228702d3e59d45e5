#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "condbound/conic.hpp"
#include "condbound/detail/simplex.hpp"
#include "condbound/model.hpp"
#include "condbound/sos.hpp"
#include "condbound/types.hpp"

namespace condbound::oracle {

// ---------------------------------------------------------------------------
// Grids
// ---------------------------------------------------------------------------

struct GridAxis {
    double lo = 0.0, hi = 1.0;
    int num_points = 1024;
    bool log_spaced = false;
};

struct GridSpec {
    enum class Mode { Atoms, SymmetricPairs, DiracPlusUniforms };
    std::vector<GridAxis> axes;
    Mode mode = Mode::Atoms;
    double center = 0.0;          // generator center for structured modes
    std::vector<double> forced;   // force-included points (event boundaries, t-minus atoms)

    static GridSpec univariate(double lo, double hi, int n) {
        GridSpec g;
        g.axes.push_back({lo, hi, n, false});
        return g;
    }
    static GridSpec symmetric_pairs(double center, double max_offset, int n) {
        GridSpec g;
        g.axes.push_back({0.0, max_offset, n, false});
        g.mode = Mode::SymmetricPairs;
        g.center = center;
        return g;
    }
    static GridSpec dirac_plus_uniforms(double center, double max_offset, int n) {
        GridSpec g;
        g.axes.push_back({0.0, max_offset, n, false});
        g.mode = Mode::DiracPlusUniforms;
        g.center = center;
        return g;
    }

    std::vector<double> points_1d() const {
        const GridAxis& ax = axes.at(0);
        std::vector<double> pts;
        pts.reserve(static_cast<std::size_t>(ax.num_points) + forced.size());
        for (int i = 0; i < ax.num_points; ++i) {
            double f = ax.num_points == 1 ? 0.0 : static_cast<double>(i) / (ax.num_points - 1);
            if (ax.log_spaced) {
                double llo = std::log(ax.lo), lhi = std::log(ax.hi);
                pts.push_back(std::exp(llo + f * (lhi - llo)));
            } else {
                pts.push_back(ax.lo + f * (ax.hi - ax.lo));
            }
        }
        for (double v : forced)
            if (v >= ax.lo && v <= ax.hi) pts.push_back(v);
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        return pts;
    }
};

/// A grid wide enough to carry the near-extremal atoms of the instances this
/// library solves; event boundaries and their left-limit twins are forced in.
inline GridSpec default_univariate_grid(const AmbiguitySpec& spec, const EventSet& event,
                                        const PiecewisePolynomial& g, int n) {
    const auto& q = spec.moments.values;
    double mu = q.size() > 1 ? q[1] : 0.0;
    double sig = 1.0;
    if (spec.moments.size() > 2 && spec.moments.basis[2].is_power(2))
        sig = std::sqrt(std::max(q[2] - mu * mu, 1e-8));
    else if (auto* mad = std::get_if<DispersionSpec::MAD>(&spec.dispersion.kind))
        sig = std::max(mad->d, 1e-8);
    double lo = mu - 30.0 * sig, hi = mu + 30.0 * sig;
    for (double b : event.boundaries()) {
        lo = std::min(lo, b - sig);
        hi = std::max(hi, b + sig);
    }
    lo = std::max(lo, spec.support.lo[0]);
    hi = std::min(hi, spec.support.hi[0]);
    GridSpec grid = GridSpec::univariate(lo, hi, n);
    for (double b : event.boundaries()) {
        grid.forced.push_back(b);
        grid.forced.push_back(b - atom_epsilon(b));
    }
    for (double b : g.breakpoints)
        if (b >= lo && b <= hi) grid.forced.push_back(b);
    return grid;
}

// ---------------------------------------------------------------------------
// Primal LP over a discretized support (Charnes-Cooper form)
// ---------------------------------------------------------------------------

struct OracleSolution {
    BoundResult result;
    double alpha = 0.0;                 // scaling variable; 1/alpha = worst-case event mass
    double worst_event_probability = 0.0;
    std::vector<double> atom_params;    // grid coordinate per retained generator
    std::vector<double> atom_weights;   // original-measure weights (sum to 1)
    GridSpec::Mode mode = GridSpec::Mode::Atoms;
    double generator_center = 0.0;
    int moment_rows = 0;                // m+1
    long lp_iterations = 0;
};

namespace detail {

struct GeneratorColumns {
    // row values per generator: moments[j][i], event_mass[i], objective[i]
    std::vector<std::vector<double>> moments;
    std::vector<double> event_mass;
    std::vector<double> objective;
    std::vector<double> params;
};

inline GeneratorColumns build_columns(const AmbiguitySpec& spec, const EventSet& event,
                                      const PiecewisePolynomial& g, const GridSpec& grid) {
    GeneratorColumns cols;
    const std::size_t mrows = spec.moments.size();
    cols.moments.assign(mrows, {});
    std::vector<double> pts = grid.points_1d();
    const PiecewisePolynomial g_event = restrict_to_event(g, event);
    const PiecewisePolynomial ind_event = restrict_to_event(PiecewisePolynomial::constant(1.0), event);

    if (grid.mode == GridSpec::Mode::Atoms) {
        for (double x : pts) {
            for (std::size_t j = 0; j < mrows; ++j) cols.moments[j].push_back(spec.moments.basis[j](x));
            bool in = event.contains(x);
            cols.event_mass.push_back(in ? 1.0 : 0.0);
            cols.objective.push_back(in ? g(x) : 0.0);
            cols.params.push_back(x);
        }
    } else if (grid.mode == GridSpec::Mode::SymmetricPairs) {
        for (double u : pts) {
            if (u < 0.0) continue;
            double a = grid.center - u, b = grid.center + u;
            for (std::size_t j = 0; j < mrows; ++j)
                cols.moments[j].push_back(0.5 * (spec.moments.basis[j](a) + spec.moments.basis[j](b)));
            double mass = 0.5 * ((event.contains(a) ? 1.0 : 0.0) + (event.contains(b) ? 1.0 : 0.0));
            double obj = 0.5 * ((event.contains(a) ? g(a) : 0.0) + (event.contains(b) ? g(b) : 0.0));
            cols.event_mass.push_back(mass);
            cols.objective.push_back(obj);
            cols.params.push_back(u);
        }
    } else {
        PiecewisePolynomial Fg = cumulative_antiderivative(g_event);
        PiecewisePolynomial F1 = cumulative_antiderivative(ind_event);
        for (double u : pts) {
            if (u <= 0.0) {
                // the Dirac-at-center generator
                double c = grid.center;
                for (std::size_t j = 0; j < mrows; ++j) cols.moments[j].push_back(spec.moments.basis[j](c));
                bool in = event.contains(c);
                cols.event_mass.push_back(in ? 1.0 : 0.0);
                cols.objective.push_back(in ? g(c) : 0.0);
                cols.params.push_back(0.0);
                continue;
            }
            double a = grid.center - u, b = grid.center + u;
            for (std::size_t j = 0; j < mrows; ++j) {
                const MomentFunction& h = spec.moments.basis[j];
                double v;
                if (auto* p = std::get_if<MomentFunction::Power>(&h.kind)) {
                    v = Poly::monomial(p->exponent).integral(a, b) / (2.0 * u);
                } else if (auto* f = std::get_if<MomentFunction::Piecewise>(&h.kind)) {
                    v = f->f.integral(a, b) / (2.0 * u);
                } else {
                    throw std::invalid_argument("oracle: moment function not integrable over uniform generators");
                }
                cols.moments[j].push_back(v);
            }
            cols.event_mass.push_back((F1(b) - F1(a)) / (2.0 * u));
            cols.objective.push_back((Fg(b) - Fg(a)) / (2.0 * u));
            cols.params.push_back(u);
        }
    }
    return cols;
}

}  // namespace detail

/// Solves the discretized Charnes-Cooper LP
///   max sum_i g(x_i) 1_E(x_i) q_i
///   s.t. |sum_i h_j(x_i) q_i - alpha q_j| <= eta_j   (all j)
///        sum_i 1_E(x_i) q_i = 1,   q, alpha >= 0
/// and returns the bound, the recovered worst-case distribution (atoms q_i /
/// alpha) and the worst-case event probability 1/alpha. The moment rows are
/// relaxed because exact power moments are generally unattainable on a finite
/// grid; eta shrinks as the caller refines.
inline OracleSolution primal_lp(const AmbiguitySpec& spec, const EventSet& event, const PiecewisePolynomial& g,
                                const GridSpec& grid, double eta_scale = 1e-9) {
    spec.moments.check_well_formed();
    auto cols = detail::build_columns(spec, event, g, grid);
    const int m1 = static_cast<int>(spec.moments.size());  // m+1 moment rows
    const int n = static_cast<int>(cols.params.size());

    conic::LpProblem lp;
    lp.c = Eigen::VectorXd::Zero(n + 1);
    for (int i = 0; i < n; ++i) lp.c[i] = -cols.objective[static_cast<std::size_t>(i)];
    lp.A = Eigen::MatrixXd::Zero(m1 + 1, n + 1);
    lp.row_lo = Eigen::VectorXd::Zero(m1 + 1);
    lp.row_hi = Eigen::VectorXd::Zero(m1 + 1);
    for (int j = 0; j < m1; ++j) {
        for (int i = 0; i < n; ++i) lp.A(j, i) = cols.moments[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        lp.A(j, n) = -spec.moments.values[static_cast<std::size_t>(j)];
        double eta = eta_scale * std::max(1.0, std::abs(spec.moments.values[static_cast<std::size_t>(j)]));
        lp.row_lo[j] = -eta;
        lp.row_hi[j] = eta;
    }
    for (int i = 0; i < n; ++i) lp.A(m1, i) = cols.event_mass[static_cast<std::size_t>(i)];
    lp.row_lo[m1] = lp.row_hi[m1] = 1.0;
    lp.upper = Eigen::VectorXd::Constant(n + 1, kInf);

    auto sol = conic::solve_lp_vertex(lp);
    if (sol.status == conic::LpSolution::Status::Infeasible)
        throw InfeasibleDiscretization("primal_lp: moment system unsatisfiable on this grid");
    if (sol.status != conic::LpSolution::Status::Optimal)
        throw SolverFailure("primal_lp: simplex did not reach an optimum");

    OracleSolution out;
    out.mode = grid.mode;
    out.generator_center = grid.center;
    out.moment_rows = m1;
    out.lp_iterations = sol.iterations;
    out.alpha = sol.x[n];
    if (out.alpha > 1.0 / tolerances().event_mass_eps)
        throw EventMassVanishes("primal_lp: worst-case event mass fell below the vanishing threshold");
    out.worst_event_probability = out.alpha > 0 ? 1.0 / out.alpha : 0.0;
    out.result.value = -sol.objective;
    out.result.status = BoundStatus::Tight;
    for (int i = 0; i < n; ++i) {
        double w = sol.x[i];
        if (w > 1e-11 * std::max(1.0, out.alpha)) {
            out.atom_params.push_back(cols.params[static_cast<std::size_t>(i)]);
            // original-measure weight q_i / alpha; the event-side weights then
            // sum to exactly 1/alpha times alpha through the normalization row
            out.atom_weights.push_back(w / out.alpha);
        }
    }
    return out;
}

/// primal_lp over structured generator grids (symmetric Dirac pairs or
/// Dirac-plus-uniform mixtures); moment rows are exact integrals per generator.
inline OracleSolution primal_lp_structured(const AmbiguitySpec& spec, const EventSet& event,
                                           const PiecewisePolynomial& g, const GridSpec& grid,
                                           double eta_scale = 1e-9) {
    if (grid.mode == GridSpec::Mode::Atoms)
        throw std::invalid_argument("primal_lp_structured: grid must use a structured generator mode");
    return primal_lp(spec, event, g, grid, eta_scale);
}

/// Rebuilds the worst-case distribution found by the LP as an explicit mixture.
/// Vertex optima carry at most m+2 basic variables (the moment rows plus the
/// event-normalization row), so more atoms than that signals a non-vertex
/// solution; retried once with a small L1 perturbation before giving up.
inline ExplicitDistribution extract_support(const OracleSolution& sol, double tol = 1e-9) {
    ExplicitDistribution d;
    double total = 0.0;
    for (std::size_t i = 0; i < sol.atom_params.size(); ++i)
        if (sol.atom_weights[i] > tol) total += sol.atom_weights[i];
    for (std::size_t i = 0; i < sol.atom_params.size(); ++i) {
        double w = sol.atom_weights[i] / total;  // renormalize away the moment-row slack
        if (sol.atom_weights[i] <= tol) continue;
        double p = sol.atom_params[i];
        switch (sol.mode) {
            case GridSpec::Mode::Atoms:
                d.add(w, ExplicitDistribution::Dirac{p});
                break;
            case GridSpec::Mode::SymmetricPairs:
                if (p == 0.0) d.add(w, ExplicitDistribution::Dirac{sol.generator_center});
                else d.add(w, ExplicitDistribution::SymmetricDiracPair{sol.generator_center, p});
                break;
            case GridSpec::Mode::DiracPlusUniforms:
                if (p == 0.0) d.add(w, ExplicitDistribution::Dirac{sol.generator_center});
                else d.add(w, ExplicitDistribution::UniformInterval{sol.generator_center - p, sol.generator_center + p});
                break;
        }
    }
    int max_atoms = sol.moment_rows + 1;  // m+2
    if (static_cast<int>(d.components.size()) > max_atoms)
        throw TooManyAtoms("extract_support: more atoms than active constraints in a vertex solution");
    return d;
}

// ---------------------------------------------------------------------------
// Dinkelbach-style bisection on the parametric reformulation
// ---------------------------------------------------------------------------

/// Inner problem: phi(tau) = sup over the moment set of E[(g - tau) 1_E(X)].
/// Returns +inf when that plain moment problem is unbounded.
using InnerSolver = std::function<double(double tau)>;

/// Inner solver backed by the dual SOS machinery (power-moment specs).
inline InnerSolver inner_solver_sos(const AmbiguitySpec& spec, const EventSet& event,
                                    const PiecewisePolynomial& g) {
    return [=](double tau) {
        sos::DualBoundProblem p;
        p.moments = spec.moments;
        p.event = EventSet::full_space();
        PiecewisePolynomial shifted = g;
        for (Poly& piece : shifted.pieces) piece -= Poly::constant(tau);
        p.objective = restrict_to_event(shifted, event);
        p.structure = spec.structure;
        p.support = spec.support;
        auto r = sos::dual_bound(p);
        return r.status == BoundStatus::Tight ? r.value : kInf;
    };
}

/// Inner solver backed by the discretized primal LP (plain moment problem,
/// no Charnes-Cooper scaling).
inline InnerSolver inner_solver_primal_lp(const AmbiguitySpec& spec, const EventSet& event,
                                          const PiecewisePolynomial& g, const GridSpec& grid) {
    return [=](double tau) {
        auto cols = detail::build_columns(spec, event, g, grid);
        const int m1 = static_cast<int>(spec.moments.size());
        const int n = static_cast<int>(cols.params.size());
        conic::LpProblem lp;
        lp.c = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < n; ++i)
            lp.c[i] = -(cols.objective[static_cast<std::size_t>(i)] -
                        tau * cols.event_mass[static_cast<std::size_t>(i)]);
        lp.A = Eigen::MatrixXd::Zero(m1, n);
        lp.row_lo.resize(m1);
        lp.row_hi.resize(m1);
        for (int j = 0; j < m1; ++j) {
            for (int i = 0; i < n; ++i)
                lp.A(j, i) = cols.moments[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            double eta = 1e-9 * std::max(1.0, std::abs(spec.moments.values[static_cast<std::size_t>(j)]));
            lp.row_lo[j] = spec.moments.values[static_cast<std::size_t>(j)] - eta;
            lp.row_hi[j] = spec.moments.values[static_cast<std::size_t>(j)] + eta;
        }
        lp.upper = Eigen::VectorXd::Constant(n, kInf);
        auto sol = conic::solve_lp_vertex(lp);
        if (sol.status == conic::LpSolution::Status::Infeasible)
            throw InfeasibleDiscretization("dinkelbach inner: moment system unsatisfiable on this grid");
        if (sol.status == conic::LpSolution::Status::Unbounded) return kInf;
        return -sol.objective;
    };
}

/// Bisects tau until phi(tau) crosses zero; by the parametric equivalence the
/// crossing point is the conditional bound.
inline double dinkelbach_bisection(const InnerSolver& phi, double tau_lo, double tau_hi, double tol) {
    double phi_lo = phi(tau_lo), phi_hi = phi(tau_hi);
    if (!(phi_lo > 0.0) || !(phi_hi <= 0.0))
        throw BracketInvalid("dinkelbach_bisection: need phi(tau_lo) > 0 >= phi(tau_hi)");
    while (tau_hi - tau_lo > tol) {
        double mid = 0.5 * (tau_lo + tau_hi);
        if (phi(mid) <= 0.0) tau_hi = mid;
        else tau_lo = mid;
    }
    return 0.5 * (tau_lo + tau_hi);
}

// ---------------------------------------------------------------------------
// Grid refinement against a reference dual value
// ---------------------------------------------------------------------------

struct RefineOutcome {
    OracleSolution best;
    double achieved_gap = kInf;
    bool gap_closed = false;
    int final_points = 0;
};

/// Doubles grid resolution until reference - primal <= target_gap or the cap
/// (2^20 points univariate). A gap that stays open is reported, not fatal: it
/// flags possible divergence or dual suboptimality.
inline RefineOutcome refine_until(const AmbiguitySpec& spec, const EventSet& event, const PiecewisePolynomial& g,
                                  double target_gap, double reference, GridSpec grid) {
    if (!std::isfinite(reference)) throw PreconditionViolated("refine_until: reference value must be finite");
    RefineOutcome out;
    const int cap = 1 << 20;
    int n = grid.axes[0].num_points;
    double eta_scale = 1e-9;
    while (true) {
        grid.axes[0].num_points = n;
        auto sol = (grid.mode == GridSpec::Mode::Atoms) ? primal_lp(spec, event, g, grid, eta_scale)
                                                        : primal_lp_structured(spec, event, g, grid, eta_scale);
        double gap = reference - sol.result.value;
        if (!out.gap_closed && (gap < out.achieved_gap || out.final_points == 0)) {
            out.best = sol;
            out.achieved_gap = gap;
            out.final_points = n;
        }
        if (gap <= target_gap) {
            out.gap_closed = true;
            out.best = sol;
            out.achieved_gap = gap;
            out.final_points = n;
            break;
        }
        if (n >= cap) break;
        n = std::min(cap, 2 * n);
        eta_scale = std::max(eta_scale * 0.5, 1e-12);
    }
    out.best.result.gap = out.achieved_gap;
    return out;
}

// ---------------------------------------------------------------------------
// Bivariate grid oracle for the contextual ambiguity sets
// ---------------------------------------------------------------------------

/// Tensor-product grid points for two axes.
inline std::vector<Eigen::Vector2d> tensor_grid(const GridAxis& a0, const GridAxis& a1) {
    std::vector<Eigen::Vector2d> pts;
    pts.reserve(static_cast<std::size_t>(a0.num_points) * static_cast<std::size_t>(a1.num_points));
    for (int i = 0; i < a0.num_points; ++i) {
        double x = a0.lo + (a0.hi - a0.lo) * (a0.num_points == 1 ? 0.0 : i / (a0.num_points - 1.0));
        for (int j = 0; j < a1.num_points; ++j) {
            double y = a1.lo + (a1.hi - a1.lo) * (a1.num_points == 1 ? 0.0 : j / (a1.num_points - 1.0));
            pts.emplace_back(x, y);
        }
    }
    return pts;
}

/// Axis with a linear core and geometric tails; mean-deviation ambiguity sets
/// put vanishing mass on atoms drifting far out, so the tails must reach much
/// further than the core.
inline std::vector<double> axis_with_tails(double core_lo, double core_hi, int n_core, double tail_reach,
                                           int n_tail) {
    std::vector<double> pts;
    for (int i = 0; i < n_core; ++i) pts.push_back(core_lo + (core_hi - core_lo) * i / (n_core - 1.0));
    double half = 0.5 * (core_hi - core_lo);
    double center = 0.5 * (core_lo + core_hi);
    double ratio = std::pow(tail_reach / half, 1.0 / n_tail);
    double r = half;
    for (int i = 0; i < n_tail; ++i) {
        r *= ratio;
        pts.push_back(center + r);
        pts.push_back(center - r);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

inline std::vector<Eigen::Vector2d> tensor_grid_points(const std::vector<double>& xs,
                                                       const std::vector<double>& ys) {
    std::vector<Eigen::Vector2d> pts;
    pts.reserve(xs.size() * ys.size());
    for (double x : xs)
        for (double y : ys) pts.emplace_back(x, y);
    return pts;
}

/// Discretized Charnes-Cooper oracle for the Chebyshev (covariance upper
/// bound) ambiguity set on a bivariate grid. The moment system is
///   sum q_i = alpha,  sum q_i x_i = alpha mu,
///   sum q_i (x_i-mu)(x_i-mu)' <= alpha Sigma  (PSD order),
///   sum_{event} q_i = 1,
/// solved by column generation: small conic masters over an active column set
/// with exact pricing over the full grid.
inline OracleSolution primal_lp_chebyshev_2d(const Eigen::Vector2d& mu, const Eigen::Matrix2d& Sigma,
                                             const Eigen::Vector2d& halfspace_c, double halfspace_cbar,
                                             const std::function<double(const Eigen::Vector2d&)>& cost,
                                             const std::vector<Eigen::Vector2d>& grid,
                                             const conic::SolverSettings& settings = {}) {
    const int N = static_cast<int>(grid.size());
    std::vector<char> in_event(static_cast<std::size_t>(N));
    std::vector<double> obj(static_cast<std::size_t>(N));
    std::vector<Eigen::Vector3d> dev_svec(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
        bool in = halfspace_c.dot(grid[static_cast<std::size_t>(i)]) <= halfspace_cbar;
        in_event[static_cast<std::size_t>(i)] = in ? 1 : 0;
        obj[static_cast<std::size_t>(i)] = in ? cost(grid[static_cast<std::size_t>(i)]) : 0.0;
        Eigen::Vector2d d = grid[static_cast<std::size_t>(i)] - mu;
        dev_svec[static_cast<std::size_t>(i)] = conic::svec(d * d.transpose());
    }

    // active set: a stratified subsample to start
    std::vector<int> active;
    int stride = std::max(1, N / 256);
    for (int i = 0; i < N; i += stride) active.push_back(i);

    Eigen::VectorXd sigma_svec = conic::svec(Sigma);
    OracleSolution out;
    out.mode = GridSpec::Mode::Atoms;
    out.moment_rows = 6;  // mass + two means + three svec rows

    double best_value = -kInf;
    int stalled_rounds = 0;
    for (int round = 0; round < 120; ++round) {
        conic::ConeProgram prog;
        std::vector<int> qv = prog.add_vars(static_cast<int>(active.size()));
        int av = prog.add_var();
        conic::LinExpr objective, mass_row, mean0, mean1, event_row;
        std::vector<conic::LinExpr> psd(3);
        for (int k = 0; k < 3; ++k) psd[static_cast<std::size_t>(k)] = conic::LinExpr::var(av, sigma_svec[k]);
        for (std::size_t a = 0; a < active.size(); ++a) {
            int i = active[a];
            int v = qv[a];
            objective -= conic::LinExpr::var(v, obj[static_cast<std::size_t>(i)]);
            mass_row += conic::LinExpr::var(v);
            mean0 += conic::LinExpr::var(v, grid[static_cast<std::size_t>(i)][0]);
            mean1 += conic::LinExpr::var(v, grid[static_cast<std::size_t>(i)][1]);
            if (in_event[static_cast<std::size_t>(i)]) event_row += conic::LinExpr::var(v);
            for (int k = 0; k < 3; ++k)
                psd[static_cast<std::size_t>(k)] -= conic::LinExpr::var(v, dev_svec[static_cast<std::size_t>(i)][k]);
            prog.add_nonneg(conic::LinExpr::var(v));
        }
        prog.add_nonneg(conic::LinExpr::var(av));
        prog.set_objective(objective);
        prog.add_equality(mass_row - conic::LinExpr::var(av));
        prog.add_equality(mean0 - conic::LinExpr::var(av, mu[0]));
        prog.add_equality(mean1 - conic::LinExpr::var(av, mu[1]));
        prog.add_equality(event_row - 1.0);
        prog.add_membership(conic::ConeSpec::psd(2), psd);

        auto sol = conic::solve(prog, settings);
        if (sol.status == conic::SolveStatus::PrimalInfeasible)
            throw InfeasibleDiscretization("primal_lp_chebyshev_2d: moment system unsatisfiable on this grid");
        if (sol.status != conic::SolveStatus::Optimal)
            throw SolverFailure("primal_lp_chebyshev_2d: master solve failed");

        // pricing: reduced cost of a grid column against the master duals
        const Eigen::VectorXd& y = sol.eq_duals;                    // mass, mean0, mean1, event
        const Eigen::VectorXd& zp = sol.cone_duals.back();          // psd block dual
        double scale = std::max(1.0, std::abs(sol.objective));
        double worst = 0.0;
        std::vector<std::pair<double, int>> violated;
        for (int i = 0; i < N; ++i) {
            double red = -obj[static_cast<std::size_t>(i)] + y[0] + y[1] * grid[static_cast<std::size_t>(i)][0] +
                         y[2] * grid[static_cast<std::size_t>(i)][1] +
                         (in_event[static_cast<std::size_t>(i)] ? y[3] : 0.0) +
                         zp.dot(dev_svec[static_cast<std::size_t>(i)]);
            if (red < -1e-9 * scale) violated.push_back({red, i});
            worst = std::min(worst, red);
        }
        double value_now = -sol.objective;
        if (value_now > best_value + 1e-10 * scale) {
            best_value = value_now;
            stalled_rounds = 0;
        } else {
            ++stalled_rounds;
        }
        // accept on convergence, or when pricing noise stalls progress (the
        // master value is itself a feasible, hence valid, primal value)
        if (violated.empty() || worst > -1e-6 * scale || stalled_rounds >= 8) {
            // converged: collect the solution
            out.alpha = sol.x[av];
            if (out.alpha > 1.0 / tolerances().event_mass_eps)
                throw EventMassVanishes("primal_lp_chebyshev_2d: worst-case event mass vanished");
            out.worst_event_probability = out.alpha > 0 ? 1.0 / out.alpha : 0.0;
            out.result.value = -sol.objective;
            out.result.status = BoundStatus::Tight;
            for (std::size_t a = 0; a < active.size(); ++a) {
                double wq = sol.x[qv[a]];
                if (wq > 1e-9 * std::max(1.0, out.alpha)) {
                    out.atom_params.push_back(static_cast<double>(active[a]));
                    out.atom_weights.push_back(wq / out.alpha);
                }
            }
            return out;
        }
        std::sort(violated.begin(), violated.end());
        // drop columns that went slack, keep the master small
        std::vector<int> next;
        for (std::size_t a = 0; a < active.size(); ++a)
            if (sol.x[qv[a]] > 1e-11 * std::max(1.0, sol.x[av])) next.push_back(active[a]);
        for (std::size_t k = 0; k < violated.size() && k < 40; ++k) next.push_back(violated[k].second);
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        active = std::move(next);
    }
    throw SolverFailure("primal_lp_chebyshev_2d: column generation did not converge");
}

/// Discretized oracle for the componentwise-MAD ambiguity set: a plain LP over
/// the full bivariate grid (deviation rows are inequalities).
inline OracleSolution primal_lp_mad_2d(const Eigen::Vector2d& center, const Eigen::Matrix2d& bounds,
                                       const Eigen::Vector2d& halfspace_c, double halfspace_cbar,
                                       const std::function<double(const Eigen::Vector2d&)>& cost,
                                       const std::vector<Eigen::Vector2d>& grid) {
    const int N = static_cast<int>(grid.size());
    // deviation rows: |X1-m1|, |X2-m2|, |(X1+X2)-(m1+m2)|, |(X1-X2)-(m1-m2)|
    std::vector<Eigen::Vector2d> dirs = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
    std::vector<double> fvals = {bounds(0, 0), bounds(1, 1), bounds(0, 1), bounds(1, 0)};

    const int rows = 3 + 4 + 1;  // mass, mean0, mean1, four deviations, event
    conic::LpProblem lp;
    lp.c = Eigen::VectorXd::Zero(N + 1);
    lp.A = Eigen::MatrixXd::Zero(rows, N + 1);
    lp.row_lo = Eigen::VectorXd::Zero(rows);
    lp.row_hi = Eigen::VectorXd::Zero(rows);
    for (int i = 0; i < N; ++i) {
        const Eigen::Vector2d& x = grid[static_cast<std::size_t>(i)];
        bool in = halfspace_c.dot(x) <= halfspace_cbar;
        lp.c[i] = in ? -cost(x) : 0.0;
        lp.A(0, i) = 1.0;
        lp.A(1, i) = x[0];
        lp.A(2, i) = x[1];
        for (int k = 0; k < 4; ++k)
            lp.A(3 + k, i) = std::abs(dirs[static_cast<std::size_t>(k)].dot(x - center));
        lp.A(7, i) = in ? 1.0 : 0.0;
    }
    lp.A(0, N) = -1.0;
    lp.A(1, N) = -center[0];
    lp.A(2, N) = -center[1];
    for (int k = 0; k < 4; ++k) lp.A(3 + k, N) = -fvals[static_cast<std::size_t>(k)];
    for (int r = 0; r < 3; ++r) {
        double eta = 1e-9 * std::max(1.0, std::abs(r == 0 ? 1.0 : center[r - 1]));
        lp.row_lo[r] = -eta;
        lp.row_hi[r] = eta;
    }
    for (int k = 0; k < 4; ++k) {
        lp.row_lo[3 + k] = -kInf;  // deviation rows are upper bounds only
        lp.row_hi[3 + k] = 0.0;
    }
    lp.row_lo[7] = lp.row_hi[7] = 1.0;
    lp.upper = Eigen::VectorXd::Constant(N + 1, kInf);

    auto sol = conic::solve_lp_vertex(lp);
    if (sol.status == conic::LpSolution::Status::Infeasible)
        throw InfeasibleDiscretization("primal_lp_mad_2d: moment system unsatisfiable on this grid");
    if (sol.status != conic::LpSolution::Status::Optimal)
        throw SolverFailure("primal_lp_mad_2d: simplex did not reach an optimum");

    OracleSolution out;
    out.mode = GridSpec::Mode::Atoms;
    out.moment_rows = 7;
    out.alpha = sol.x[N];
    if (out.alpha > 1.0 / tolerances().event_mass_eps)
        throw EventMassVanishes("primal_lp_mad_2d: worst-case event mass vanished");
    out.worst_event_probability = out.alpha > 0 ? 1.0 / out.alpha : 0.0;
    out.result.value = -sol.objective;
    out.result.status = BoundStatus::Tight;
    for (int i = 0; i < N; ++i)
        if (sol.x[i] > 1e-11 * std::max(1.0, out.alpha)) {
            out.atom_params.push_back(static_cast<double>(i));
            out.atom_weights.push_back(sol.x[i] / out.alpha);
        }
    return out;
}

}  // namespace condbound::oracle
