#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "condbound/conic.hpp"
#include "condbound/model.hpp"
#include "condbound/types.hpp"

namespace condbound::dro {

// ---------------------------------------------------------------------------
// Instances
// ---------------------------------------------------------------------------

struct DecisionSet {
    enum class Kind { Fixed, Nonneg, Box };
    Kind kind = Kind::Nonneg;
    Eigen::VectorXd fixed;    // Fixed
    Eigen::VectorXd lo, hi;   // Box

    static DecisionSet fixed_at(Eigen::VectorXd v) { return {Kind::Fixed, std::move(v), {}, {}}; }
    static DecisionSet nonneg() { return {Kind::Nonneg, {}, {}, {}}; }
    static DecisionSet box(Eigen::VectorXd lo, Eigen::VectorXd hi) {
        return {Kind::Box, {}, std::move(lo), std::move(hi)};
    }
};

/// Contextual decision problem: outcome block Y (first n_y coordinates) and
/// covariate block Z (last n_z coordinates); the side-information halfspace
/// touches only the covariate block.
struct ContextualInstance {
    AmbiguitySpec spec;  // CovarianceUB or ComponentwiseMAD dispersion
    EventSet event;      // Halfspace over the covariates, or FullSpace
    PiecewiseAffineMax cost;
    DecisionSet decision_set;
    int n_y = 1, n_z = 1;

    int dim() const { return n_y + n_z; }

    /// Normalized halfspace c'x <= cbar over the full space; FullSpace maps to
    /// the degenerate halfspace 0'x <= 1 (complement empty).
    std::pair<Eigen::VectorXd, double> normalized_halfspace() const {
        if (event.is_full_space()) return {Eigen::VectorXd::Zero(dim()), 1.0};
        auto* h = std::get_if<EventSet::Halfspace>(&event.kind);
        if (!h) throw UnsupportedEvent("contextual instances take halfspace or full-space events");
        Eigen::VectorXd c = Eigen::VectorXd::Zero(dim());
        if (h->normal.size() == n_z) {
            c.tail(n_z) = h->normal;
        } else if (h->normal.size() == dim()) {
            c = h->normal;
            if (c.head(n_y).lpNorm<Eigen::Infinity>() != 0.0)
                throw std::invalid_argument("side-information halfspace must touch only the covariate block");
        } else {
            throw std::invalid_argument("halfspace dimension inconsistent with the instance");
        }
        double cbar = h->offset;
        if (h->dir == Direction::Geq) {
            c = -c;
            cbar = -cbar;
        }
        return {c, cbar};
    }

    void check_well_formed() const {
        cost.check_well_formed();
        if (cost.uncertainty_dim != dim())
            throw std::invalid_argument("cost uncertainty dimension must match n_y + n_z");
        normalized_halfspace();
    }
};

// ---------------------------------------------------------------------------
// Worst-case event mass (operationalizes the vanishing-event guard)
// ---------------------------------------------------------------------------

/// inf and sup of P(c'X <= cbar) over the instance's ambiguity set, via the
/// scalar projection c'X (exact for covariance sets; for componentwise-MAD
/// sets exact when the halfspace touches a single coordinate).
inline std::pair<double, double> event_mass_range(const ContextualInstance& inst) {
    auto [c, cbar] = inst.normalized_halfspace();
    if (c.lpNorm<Eigen::Infinity>() == 0.0) return {1.0, 1.0};
    using DS = DispersionSpec;
    if (auto* cov = std::get_if<DS::CovarianceUB>(&inst.spec.dispersion.kind)) {
        Eigen::VectorXd mu(inst.dim());
        for (int k = 0; k < inst.dim(); ++k) mu[k] = inst.spec.moments.values[static_cast<std::size_t>(k) + 1];
        double m = c.dot(mu), v = c.dot(cov->Sigma * c);
        double a = cbar - m;  // event is {c'X - m <= a}
        double sup_above = (a >= 0) ? 1.0 : v / (v + a * a);          // sup P(event)
        double sup_below = (a <= 0) ? 1.0 : v / (v + a * a);          // sup P(complement closure)
        return {1.0 - sup_below, sup_above};
    }
    if (auto* cm = std::get_if<DS::ComponentwiseMAD>(&inst.spec.dispersion.kind)) {
        int idx = -1;
        for (int k = 0; k < inst.dim(); ++k)
            if (c[k] != 0.0) {
                if (idx >= 0) throw UnsupportedEvent("event-mass range needs a single-coordinate halfspace");
                idx = k;
            }
        double m = cm->center[idx], f = cm->bounds(idx, idx);
        double thr = cbar / c[idx];
        bool event_is_upper_tail = c[idx] < 0;  // c x <= cbar flips when dividing by c < 0
        // one-sided mean-MAD tail bound: sup P(X >= m + a) = min(1, f/(2a)) for a > 0
        auto sup_upper = [&](double th) { return th <= m ? 1.0 : std::min(1.0, f / (2.0 * (th - m))); };
        auto sup_lower = [&](double th) { return th >= m ? 1.0 : std::min(1.0, f / (2.0 * (m - th))); };
        double sup_event = event_is_upper_tail ? sup_upper(thr) : sup_lower(thr);
        double sup_compl = event_is_upper_tail ? sup_lower(thr) : sup_upper(thr);
        return {1.0 - sup_compl, sup_event};
    }
    throw std::invalid_argument("event_mass_range: unsupported dispersion kind");
}

namespace detail {

inline BoundResult degenerate_event_result(const ContextualInstance& inst) {
    auto [inf_mass, sup_mass] = event_mass_range(inst);
    // no distribution in the set reaches the event at all: conditioning is
    // ill-posed; a vanishing worst-case mass with reachable event diverges
    if (sup_mass <= 0.0) return BoundResult::infeasible();
    if (inf_mass <= tolerances().event_mass_eps) return BoundResult::divergent();
    BoundResult ok;
    ok.status = BoundStatus::Tight;
    return ok;
}

/// Adds decision variables honoring the decision set; returns their indices.
inline std::vector<int> add_decision(conic::ConeProgram& prog, const DecisionSet& ds, int p) {
    std::vector<int> nu = prog.add_vars(p);
    switch (ds.kind) {
        case DecisionSet::Kind::Fixed:
            for (int k = 0; k < p; ++k) prog.add_equality(conic::LinExpr::var(nu[static_cast<std::size_t>(k)]) - ds.fixed[k]);
            break;
        case DecisionSet::Kind::Nonneg:
            for (int k = 0; k < p; ++k) prog.add_nonneg(conic::LinExpr::var(nu[static_cast<std::size_t>(k)]));
            break;
        case DecisionSet::Kind::Box:
            for (int k = 0; k < p; ++k) {
                prog.add_nonneg(conic::LinExpr::var(nu[static_cast<std::size_t>(k)]) - ds.lo[k]);
                prog.add_nonneg(ds.hi[k] - conic::LinExpr::var(nu[static_cast<std::size_t>(k)]));
            }
            break;
    }
    return nu;
}

inline conic::LinExpr affine_term(const std::vector<int>& vars, const Eigen::VectorXd& coeffs, double constant) {
    conic::LinExpr e(constant);
    for (std::size_t k = 0; k < vars.size(); ++k)
        if (coeffs[static_cast<int>(k)] != 0.0) e += conic::LinExpr::var(vars[k], coeffs[static_cast<int>(k)]);
    return e;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Chebyshev (covariance upper bound) contextual program
// ---------------------------------------------------------------------------

/// Joint minimization of the worst-case conditional cost over the decision and
/// the dual multipliers: one semidefinite program with a 2x2-block LMI per
/// complement certificate and per cost term.
inline std::pair<Eigen::VectorXd, BoundResult> chebyshev_contextual(const ContextualInstance& inst,
                                                                    const conic::SolverSettings& settings = {}) {
    inst.check_well_formed();
    auto* cov = std::get_if<DispersionSpec::CovarianceUB>(&inst.spec.dispersion.kind);
    if (!cov) throw std::invalid_argument("chebyshev_contextual: needs a CovarianceUB dispersion");
    const int n = inst.dim();
    const int p = inst.cost.decision_dim;
    const int L = static_cast<int>(inst.cost.terms.size());
    auto [c, cbar] = inst.normalized_halfspace();
    const bool full_space = c.lpNorm<Eigen::Infinity>() == 0.0;

    BoundResult guard = detail::degenerate_event_result(inst);
    if (guard.status != BoundStatus::Tight) return {Eigen::VectorXd(), guard};

    Eigen::VectorXd mu(n);
    for (int k = 0; k < n; ++k) mu[k] = inst.spec.moments.values[static_cast<std::size_t>(k) + 1];

    conic::ConeProgram prog;
    std::vector<int> nu = detail::add_decision(prog, inst.decision_set, p);
    int lam0 = prog.add_var();
    std::vector<int> lam1 = prog.add_vars(n);
    std::vector<int> Lam = prog.add_vars(conic::svec_len(n));  // svec of the quadratic multiplier
    int lam3 = prog.add_var();
    prog.set_objective(conic::LinExpr::var(lam3));

    const double r2 = std::sqrt(2.0);
    Eigen::VectorXd sigma_svec = conic::svec(cov->Sigma);

    // budget row: lam0 + lam1'mu + <Lambda, Sigma> <= 0
    conic::LinExpr budget = conic::LinExpr::var(lam0);
    for (int k = 0; k < n; ++k) budget += conic::LinExpr::var(lam1[static_cast<std::size_t>(k)], mu[k]);
    for (int k = 0; k < conic::svec_len(n); ++k)
        budget += conic::LinExpr::var(Lam[static_cast<std::size_t>(k)], sigma_svec[k]);
    prog.add_nonneg(-budget);

    // (Lambda mu)_k and mu'Lambda mu as linear expressions in the svec variables
    auto lam_mu = [&](int k) {
        conic::LinExpr e;
        for (int j = 0; j < n; ++j) {
            double scale = (j == k) ? 1.0 : 1.0 / r2;
            e += conic::LinExpr::var(Lam[static_cast<std::size_t>(conic::svec_index(k, j, n))], scale * mu[j]);
        }
        return e;
    };
    Eigen::VectorXd mu_outer_svec = conic::svec(mu * mu.transpose());
    conic::LinExpr mu_lam_mu;
    for (int k = 0; k < conic::svec_len(n); ++k)
        mu_lam_mu += conic::LinExpr::var(Lam[static_cast<std::size_t>(k)], mu_outer_svec[k]);

    // dispersion is centered, (x-mu)'Lambda(x-mu), so the (n+1)-block over
    // (1, x) is [[a + mu'Lambda mu, (b - Lambda mu)'], [., Lambda]] >= 0
    auto add_block = [&](conic::LinExpr a, std::vector<conic::LinExpr> b) {
        std::vector<conic::LinExpr> slice;
        slice.push_back(a + mu_lam_mu);
        for (int k = 0; k < n; ++k) slice.push_back((b[static_cast<std::size_t>(k)] - lam_mu(k)) * r2);
        for (int j = 0; j < n; ++j)
            for (int i = j; i < n; ++i)
                slice.push_back(conic::LinExpr::var(Lam[static_cast<std::size_t>(conic::svec_index(i, j, n))]));
        prog.add_membership(conic::ConeSpec::psd(n + 1), std::move(slice));
    };

    // complement-side certificate with multiplier tau on c'x >= cbar
    if (!full_space) {
        int tau = prog.add_var();
        prog.add_nonneg(conic::LinExpr::var(tau));
        std::vector<conic::LinExpr> b(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k)
            b[static_cast<std::size_t>(k)] =
                0.5 * (conic::LinExpr::var(lam1[static_cast<std::size_t>(k)]) - conic::LinExpr::var(tau, c[k]));
        add_block(conic::LinExpr::var(lam0) + conic::LinExpr::var(tau, cbar), std::move(b));
    }

    // one event-side certificate per cost term, multiplier chi_l on c'x <= cbar
    for (int l = 0; l < L; ++l) {
        const auto& term = inst.cost.terms[static_cast<std::size_t>(l)];
        int chi = -1;
        if (!full_space) {
            chi = prog.add_var();
            prog.add_nonneg(conic::LinExpr::var(chi));
        }
        conic::LinExpr a = conic::LinExpr::var(lam0) + conic::LinExpr::var(lam3) -
                           detail::affine_term(nu, term.intercept_nu, term.intercept_0);
        if (chi >= 0) a -= conic::LinExpr::var(chi, cbar);
        std::vector<conic::LinExpr> b(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            conic::LinExpr sk = detail::affine_term(nu, term.slope_nu.row(k).transpose(), term.slope_0[k]);
            conic::LinExpr e = conic::LinExpr::var(lam1[static_cast<std::size_t>(k)]) - sk;
            if (chi >= 0) e += conic::LinExpr::var(chi, c[k]);
            b[static_cast<std::size_t>(k)] = e * 0.5;
        }
        add_block(std::move(a), std::move(b));
    }

    auto out = conic::solve(prog, settings);
    BoundResult res;
    if (out.status == conic::SolveStatus::Optimal) {
        res.value = out.objective;
        res.status = BoundStatus::Tight;
        std::vector<double> cert;
        cert.push_back(out.x[lam0]);
        for (int k = 0; k < n; ++k) cert.push_back(out.x[lam1[static_cast<std::size_t>(k)]]);
        for (int k = 0; k < conic::svec_len(n); ++k) cert.push_back(out.x[Lam[static_cast<std::size_t>(k)]]);
        cert.push_back(out.x[lam3]);
        res.dual_certificate = std::move(cert);
    } else if (out.status == conic::SolveStatus::PrimalInfeasible) {
        return {Eigen::VectorXd(), BoundResult::divergent()};
    } else if (out.status == conic::SolveStatus::DualInfeasibleOrUnbounded) {
        return {Eigen::VectorXd(), BoundResult::infeasible()};
    } else {
        throw SolverFailure("chebyshev_contextual: conic solve failed");
    }
    Eigen::VectorXd nu_star(p);
    for (int k = 0; k < p; ++k) nu_star[k] = out.x[nu[static_cast<std::size_t>(k)]];
    return {nu_star, res};
}

// ---------------------------------------------------------------------------
// Componentwise-MAD contextual program
// ---------------------------------------------------------------------------

namespace detail {

/// Deviation description d(x) = m0 + D x covering the componentwise rows
/// |X_i - m_i| and the pairwise rows |(X_i +- X_j) - (m_i +- m_j)|; bounds
/// are read from the f matrix (diagonal: componentwise; (i<j): plus pair;
/// (j>i): minus pair).
struct MadRows {
    Eigen::MatrixXd D;
    Eigen::VectorXd m0;
    Eigen::VectorXd f;
};

inline MadRows mad_rows(const DispersionSpec::ComponentwiseMAD& cm) {
    const int n = static_cast<int>(cm.center.size());
    const int rows = n * n;
    MadRows r;
    r.D = Eigen::MatrixXd::Zero(rows, n);
    r.m0 = Eigen::VectorXd::Zero(rows);
    r.f = Eigen::VectorXd::Zero(rows);
    int k = 0;
    for (int i = 0; i < n; ++i) {
        r.D(k, i) = 1.0;
        r.m0[k] = -cm.center[i];
        r.f[k] = cm.bounds(i, i);
        ++k;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            r.D(k, i) = 1.0;
            r.D(k, j) = 1.0;
            r.m0[k] = -(cm.center[i] + cm.center[j]);
            r.f[k] = cm.bounds(i, j);
            ++k;
            r.D(k, i) = 1.0;
            r.D(k, j) = -1.0;
            r.m0[k] = -(cm.center[i] - cm.center[j]);
            r.f[k] = cm.bounds(j, i);
            ++k;
        }
    r.D.conservativeResize(k, n);
    r.m0.conservativeResize(k);
    r.f.conservativeResize(k);
    return r;
}

}  // namespace detail

/// Linear-program reformulation for the componentwise-MAD ambiguity set with
/// halfspace side information: positive and negative parts of each absolute
/// deviation get their own multipliers.
inline std::pair<Eigen::VectorXd, BoundResult> mad_contextual(const ContextualInstance& inst,
                                                              const conic::SolverSettings& settings = {}) {
    inst.check_well_formed();
    auto* cm = std::get_if<DispersionSpec::ComponentwiseMAD>(&inst.spec.dispersion.kind);
    if (!cm) throw std::invalid_argument("mad_contextual: needs a ComponentwiseMAD dispersion");
    const int n = inst.dim();
    const int p = inst.cost.decision_dim;
    const int L = static_cast<int>(inst.cost.terms.size());
    auto [c, cbar] = inst.normalized_halfspace();
    const bool full_space = c.lpNorm<Eigen::Infinity>() == 0.0;

    BoundResult guard = detail::degenerate_event_result(inst);
    if (guard.status != BoundStatus::Tight) return {Eigen::VectorXd(), guard};

    detail::MadRows rows = detail::mad_rows(*cm);
    const int m = static_cast<int>(rows.f.size());

    conic::ConeProgram prog;
    std::vector<int> nu = detail::add_decision(prog, inst.decision_set, p);
    int lam0 = prog.add_var();
    std::vector<int> lam1 = prog.add_vars(n);
    std::vector<int> lam2 = prog.add_vars(m);
    int lam3 = prog.add_var();
    for (int k = 0; k < m; ++k) prog.add_nonneg(conic::LinExpr::var(lam2[static_cast<std::size_t>(k)]));
    prog.set_objective(conic::LinExpr::var(lam3));

    conic::LinExpr budget = conic::LinExpr::var(lam0);
    for (int k = 0; k < n; ++k) budget += conic::LinExpr::var(lam1[static_cast<std::size_t>(k)], cm->center[k]);
    for (int k = 0; k < m; ++k) budget += conic::LinExpr::var(lam2[static_cast<std::size_t>(k)], rows.f[k]);
    prog.add_nonneg(-budget);

    // one multiplier block per semi-infinite constraint
    auto add_dual_block = [&](const conic::LinExpr& const_part, const std::vector<conic::LinExpr>& lin_rhs,
                              double tau_sign) {
        // const_part + cbar-scaled tau + chi'm0 terms >= 0;
        // tau * (sign c) - D'chi+ + D'chi- = lin_rhs;  chi+ + chi- = lam2
        int tau = -1;
        if (!full_space) {
            tau = prog.add_var();
            prog.add_nonneg(conic::LinExpr::var(tau));
        }
        std::vector<int> chip = prog.add_vars(m), chim = prog.add_vars(m);
        for (int k = 0; k < m; ++k) {
            prog.add_nonneg(conic::LinExpr::var(chip[static_cast<std::size_t>(k)]));
            prog.add_nonneg(conic::LinExpr::var(chim[static_cast<std::size_t>(k)]));
            prog.add_equality(conic::LinExpr::var(chip[static_cast<std::size_t>(k)]) +
                              conic::LinExpr::var(chim[static_cast<std::size_t>(k)]) -
                              conic::LinExpr::var(lam2[static_cast<std::size_t>(k)]));
        }
        conic::LinExpr head = const_part;
        if (tau >= 0) head += conic::LinExpr::var(tau, tau_sign * cbar);
        for (int k = 0; k < m; ++k) {
            head += conic::LinExpr::var(chip[static_cast<std::size_t>(k)], rows.m0[k]);
            head -= conic::LinExpr::var(chim[static_cast<std::size_t>(k)], rows.m0[k]);
        }
        prog.add_nonneg(head);
        for (int j = 0; j < n; ++j) {
            conic::LinExpr row;
            if (tau >= 0) row += conic::LinExpr::var(tau, tau_sign * c[j]);
            for (int k = 0; k < m; ++k) {
                if (rows.D(k, j) != 0.0) {
                    row -= conic::LinExpr::var(chip[static_cast<std::size_t>(k)], rows.D(k, j));
                    row += conic::LinExpr::var(chim[static_cast<std::size_t>(k)], rows.D(k, j));
                }
            }
            prog.add_equality(row - lin_rhs[static_cast<std::size_t>(j)]);
        }
    };

    // complement side: c'x >= cbar, rhs lam1
    if (!full_space) {
        std::vector<conic::LinExpr> rhs(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) rhs[static_cast<std::size_t>(j)] = conic::LinExpr::var(lam1[static_cast<std::size_t>(j)]);
        add_dual_block(conic::LinExpr::var(lam0), rhs, +1.0);
    }
    // event side per cost term: c'x <= cbar, rhs lam1 - s_l(nu)
    for (int l = 0; l < L; ++l) {
        const auto& term = inst.cost.terms[static_cast<std::size_t>(l)];
        conic::LinExpr cst = conic::LinExpr::var(lam0) + conic::LinExpr::var(lam3) -
                             detail::affine_term(nu, term.intercept_nu, term.intercept_0);
        std::vector<conic::LinExpr> rhs(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j)
            rhs[static_cast<std::size_t>(j)] = conic::LinExpr::var(lam1[static_cast<std::size_t>(j)]) -
                                               detail::affine_term(nu, term.slope_nu.row(j).transpose(), term.slope_0[j]);
        add_dual_block(cst, rhs, -1.0);
    }

    auto out = conic::solve(prog, settings);
    BoundResult res;
    if (out.status == conic::SolveStatus::Optimal) {
        res.value = out.objective;
        res.status = BoundStatus::Tight;
    } else if (out.status == conic::SolveStatus::PrimalInfeasible) {
        return {Eigen::VectorXd(), BoundResult::divergent()};
    } else if (out.status == conic::SolveStatus::DualInfeasibleOrUnbounded) {
        return {Eigen::VectorXd(), BoundResult::infeasible()};
    } else {
        throw SolverFailure("mad_contextual: conic solve failed");
    }
    Eigen::VectorXd nu_star(p);
    for (int k = 0; k < p; ++k) nu_star[k] = out.x[nu[static_cast<std::size_t>(k)]];
    return {nu_star, res};
}

// ---------------------------------------------------------------------------
// Newsvendor pieces
// ---------------------------------------------------------------------------

/// Two-term max representation of h(q-D)^+ + p(D-q)^+ over x = (D, Z...),
/// affine in the scalar order quantity q:
///   term 1: -h D + h q,  term 2: p D - p q.
inline PiecewiseAffineMax newsvendor_cost(double h, double p, int uncertainty_dim = 2, int demand_index = 0) {
    if (!(h > 0.0) || !(p > 0.0)) throw PreconditionViolated("newsvendor_cost: h and p must be positive");
    PiecewiseAffineMax f;
    f.decision_dim = 1;
    f.uncertainty_dim = uncertainty_dim;
    PiecewiseAffineMax::Term holding;
    holding.slope_nu = Eigen::MatrixXd::Zero(uncertainty_dim, 1);
    holding.slope_0 = Eigen::VectorXd::Zero(uncertainty_dim);
    holding.slope_0[demand_index] = -h;
    holding.intercept_nu = Eigen::VectorXd::Constant(1, h);
    holding.intercept_0 = 0.0;
    PiecewiseAffineMax::Term penalty;
    penalty.slope_nu = Eigen::MatrixXd::Zero(uncertainty_dim, 1);
    penalty.slope_0 = Eigen::VectorXd::Zero(uncertainty_dim);
    penalty.slope_0[demand_index] = p;
    penalty.intercept_nu = Eigen::VectorXd::Constant(1, -p);
    penalty.intercept_0 = 0.0;
    f.terms = {holding, penalty};
    return f;
}

/// Unconditional mean-variance worst-case expected newsvendor cost at order
/// quantity q (the classical two-point extremal value).
inline double scarf_baseline(double h, double p, double mu_d, double sigma_d, double q) {
    if (!(sigma_d > 0.0)) throw InvalidDispersion("scarf_baseline: sigma must be positive");
    double dq = q - mu_d;
    return h * dq + (h + p) * 0.5 * (std::sqrt(sigma_d * sigma_d + dq * dq) - dq);
}

// ---------------------------------------------------------------------------
// Ground truth under a bivariate normal
// ---------------------------------------------------------------------------

namespace detail {

inline double std_normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); }
inline double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
inline void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            double dp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
            double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
        }
        double dp = n * (x * p0 - p1) / (x * x - 1.0);
        nodes[static_cast<std::size_t>(i)] = -x;
        nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        weights[static_cast<std::size_t>(i)] = weights[static_cast<std::size_t>(n - 1 - i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

/// E[h(q-D)^+ + p(D-q)^+] for D ~ N(m, s^2).
inline double normal_newsvendor_loss(double h, double p, double q, double m, double s) {
    if (s <= 1e-14) return h * std::max(q - m, 0.0) + p * std::max(m - q, 0.0);
    double a = (m - q) / s;
    double expected_backorder = (m - q) * std_normal_cdf(a) + s * std_normal_pdf(a);
    return h * (q - m) + (h + p) * expected_backorder;
}

}  // namespace detail

/// Exact conditional expected newsvendor cost under a bivariate normal
/// (D, Z) with means mu, stds (sigma_d, sigma_z) and correlation rho, given
/// Z in the event: one-dimensional quadrature over the covariate with the
/// closed-form conditional-normal inner expectation. The integration window
/// spans twelve standard deviations past the event boundary, far below the
/// quadrature tolerance.
inline double ground_truth_conditional_cost(const Eigen::Vector2d& mu, double sigma_d, double sigma_z, double rho,
                                            double h, double p, double q, const EventSet& event, int n_nodes = 200) {
    if (!(sigma_d > 0.0) || !(sigma_z > 0.0) || std::abs(rho) > 1.0 || n_nodes < 2)
        throw QuadratureFailure("ground_truth_conditional_cost: invalid inputs");
    double u_lo = -12.0, u_hi = 12.0;  // standardized covariate window
    if (!event.is_full_space()) {
        auto* hs = std::get_if<EventSet::Halfspace>(&event.kind);
        double z0, dir;
        if (hs) {
            if (hs->normal.size() != 1)
                throw UnsupportedEvent("ground truth: covariate halfspaces only");
            z0 = hs->offset / hs->normal[0];
            dir = (hs->normal[0] > 0) == (hs->dir == Direction::Geq) ? +1.0 : -1.0;
        } else if (auto* hl = std::get_if<EventSet::HalfLine>(&event.kind)) {
            z0 = hl->threshold;
            dir = hl->dir == Direction::Geq ? +1.0 : -1.0;
        } else {
            throw UnsupportedEvent("ground truth: half-line or halfspace events over the covariate");
        }
        double u0 = (z0 - mu[1]) / sigma_z;
        if (dir > 0) u_lo = u0;
        else u_hi = u0;
        u_lo = std::max(u_lo, -12.0);
        u_hi = std::min(u_hi, 12.0);
    }
    if (!(u_lo < u_hi)) throw QuadratureFailure("ground_truth_conditional_cost: event has no covariate mass window");

    std::vector<double> nodes, weights;
    detail::gauss_legendre(n_nodes, nodes, weights);
    double s_cond = sigma_d * std::sqrt(std::max(0.0, 1.0 - rho * rho));
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n_nodes; ++i) {
        double u = 0.5 * (u_lo + u_hi) + 0.5 * (u_hi - u_lo) * nodes[static_cast<std::size_t>(i)];
        double w = 0.5 * (u_hi - u_lo) * weights[static_cast<std::size_t>(i)] * detail::std_normal_pdf(u);
        double m_cond = mu[0] + rho * sigma_d * u;
        num += w * detail::normal_newsvendor_loss(h, p, q, m_cond, s_cond);
        den += w;
    }
    if (!(den > 0.0)) throw QuadratureFailure("ground_truth_conditional_cost: vanishing event probability");
    return num / den;
}

}  // namespace condbound::dro
