#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>
#include <vector>

#include "condbound/conic.hpp"
#include "condbound/model.hpp"
#include "condbound/types.hpp"

namespace condbound::sos {

using conic::ConeProgram;
using conic::ConeSpec;
using conic::LinExpr;

// ---------------------------------------------------------------------------
// Exact moments for figure reproduction
// ---------------------------------------------------------------------------

/// Raw moments of Uniform[a,b]: E[X^j] = (b^{j+1} - a^{j+1}) / ((j+1)(b-a)).
inline std::vector<double> uniform_power_moments(double a, double b, int m) {
    std::vector<double> q(static_cast<std::size_t>(m) + 1);
    for (int j = 0; j <= m; ++j)
        q[static_cast<std::size_t>(j)] = (std::pow(b, j + 1) - std::pow(a, j + 1)) / ((j + 1) * (b - a));
    return q;
}

/// Raw moments of N(mu, sigma^2); central moments are double factorials.
inline std::vector<double> normal_power_moments(double mu, double sigma, int m) {
    std::vector<double> central(static_cast<std::size_t>(m) + 1, 0.0);
    central[0] = 1.0;
    for (int k = 2; k <= m; k += 2) central[static_cast<std::size_t>(k)] = central[static_cast<std::size_t>(k - 2)] * (k - 1) * sigma * sigma;
    std::vector<double> q(static_cast<std::size_t>(m) + 1, 0.0);
    for (int j = 0; j <= m; ++j) {
        double v = 0.0, binom = 1.0;
        for (int k = 0; k <= j; ++k) {
            v += binom * central[static_cast<std::size_t>(k)] * std::pow(mu, j - k);
            binom = binom * (j - k) / (k + 1);
        }
        q[static_cast<std::size_t>(j)] = v;
    }
    return q;
}

// ---------------------------------------------------------------------------
// Interval nonnegativity certificates
// ---------------------------------------------------------------------------

namespace detail {

/// Coefficients (ascending) of a fresh SOS polynomial of even degree d,
/// backed by a PSD Gram block added to the program.
inline std::vector<LinExpr> fresh_sos(ConeProgram& prog, int d) {
    const int k = d / 2 + 1;
    std::vector<int> q = prog.add_vars(conic::svec_len(k));
    std::vector<LinExpr> slice;
    for (int idx : q) slice.push_back(LinExpr::var(idx));
    prog.add_membership(ConeSpec::psd(k), slice);
    const double r = std::sqrt(2.0);
    std::vector<LinExpr> coeffs(static_cast<std::size_t>(d) + 1);
    for (int power = 0; power <= d; ++power) {
        LinExpr e;
        for (int i = 0; i < k; ++i) {
            int j = power - i;
            if (j < 0 || j >= k || j > i) continue;
            e += LinExpr::var(q[static_cast<std::size_t>(conic::svec_index(i, j, k))], i == j ? 1.0 : r);
        }
        coeffs[static_cast<std::size_t>(power)] = e;
    }
    return coeffs;
}

/// Substitute x = alpha + beta*u into an affine-coefficient polynomial.
inline std::vector<LinExpr> compose_affine(const std::vector<LinExpr>& coeffs, double alpha, double beta) {
    std::vector<LinExpr> out(coeffs.size());
    Poly basis = Poly::constant(1.0);  // (alpha + beta u)^j
    Poly lin({alpha, beta});
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        for (int k = 0; k <= basis.degree(); ++k) {
            double w = basis.coeff(static_cast<std::size_t>(k));
            if (w != 0.0) out[static_cast<std::size_t>(k)] += coeffs[j] * w;
        }
        if (j + 1 < coeffs.size()) basis = basis * lin;
    }
    return out;
}

inline std::vector<LinExpr> multiply_fixed(const std::vector<LinExpr>& coeffs, const Poly& w) {
    std::vector<LinExpr> out(coeffs.size() + static_cast<std::size_t>(w.degree()));
    for (std::size_t j = 0; j < coeffs.size(); ++j)
        for (int k = 0; k <= w.degree(); ++k) {
            double wk = w.coeff(static_cast<std::size_t>(k));
            if (wk != 0.0) out[j + static_cast<std::size_t>(k)] += coeffs[j] * wk;
        }
    return out;
}

inline int round_up_even(int d) { return d % 2 == 0 ? d : d + 1; }

}  // namespace detail

/// Emits cone blocks certifying p(x) >= 0 on the interval [lo, hi] (either end
/// may be infinite): p is SOS on the real line; p = s0 + (x-a) s1 on [a, inf);
/// p = s0 + (b-x) s1 on (-inf, b]; p = s0 + (x-a)(b-x) s1 on [a, b]. The cell
/// is mapped to [0, 1] or [0, inf) first so the Gram systems stay conditioned;
/// scale_hint sets the unbounded-cell unit.
inline void nonneg_on_interval(ConeProgram& prog, const std::vector<LinExpr>& coeffs, double lo, double hi,
                               double scale_hint = 1.0) {
    if (lo > hi) throw EmptyInterval("nonneg_on_interval: empty interval");
    int d = static_cast<int>(coeffs.size()) - 1;
    while (d > 0 && coeffs[static_cast<std::size_t>(d)].terms.empty() &&
           coeffs[static_cast<std::size_t>(d)].constant == 0.0)
        --d;
    const double s = std::max(1.0, scale_hint);

    std::vector<LinExpr> local;  // coefficients in the cell variable u
    Poly w;                      // weight polynomial in u, empty means pure SOS
    bool bounded_lo = std::isfinite(lo), bounded_hi = std::isfinite(hi);
    if (bounded_lo && bounded_hi) {
        local = detail::compose_affine(coeffs, lo, hi - lo);  // u in [0, 1]
        w = Poly({0.0, 1.0, -1.0});                           // u (1 - u)
    } else if (bounded_lo) {
        local = detail::compose_affine(coeffs, lo, s);  // u in [0, inf)
        w = Poly({0.0, 1.0});
    } else if (bounded_hi) {
        local = detail::compose_affine(coeffs, hi, -s);  // u in [0, inf)
        w = Poly({0.0, 1.0});
    } else {
        local = detail::compose_affine(coeffs, 0.0, s);
    }

    int d0 = detail::round_up_even(d);
    std::vector<LinExpr> rhs = detail::fresh_sos(prog, d0);
    if (!w.is_zero()) {
        int d1 = std::max(0, detail::round_up_even(d0 - w.degree()));
        auto ws1 = detail::multiply_fixed(detail::fresh_sos(prog, d1), w);
        if (ws1.size() > rhs.size()) rhs.resize(ws1.size());
        for (std::size_t k = 0; k < ws1.size(); ++k) rhs[k] += ws1[k];
    }
    if (local.size() < rhs.size()) local.resize(rhs.size());
    for (std::size_t k = 0; k < local.size(); ++k) prog.add_equality(local[k] - rhs[k]);
}

// ---------------------------------------------------------------------------
// Dual bound problems
// ---------------------------------------------------------------------------

struct DualBoundProblem {
    MomentSpec moments;              // power basis {1, x, ..., x^m}
    EventSet event;                  // HalfLine, Interval or FullSpace
    PiecewisePolynomial objective;   // g
    StructuralClass structure = StructuralClass::none();
    SupportBox support = SupportBox::real_line();
};

namespace detail {

struct Cell {
    double lo, hi, mid;
    bool in_event;
};

inline std::vector<Cell> build_cells(const PiecewisePolynomial& g, const EventSet& event, double A, double B) {
    std::vector<double> pts;
    for (double b : g.breakpoints)
        if (b > A && b < B) pts.push_back(b);
    for (double b : event.boundaries())
        if (b > A && b < B) pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<Cell> cells;
    double lo = A;
    for (std::size_t i = 0; i <= pts.size(); ++i) {
        double hi = (i < pts.size()) ? pts[i] : B;
        if (hi > lo) {
            double mid;
            if (std::isfinite(lo) && std::isfinite(hi)) mid = 0.5 * (lo + hi);
            else if (std::isfinite(lo)) mid = lo + 1.0;
            else if (std::isfinite(hi)) mid = hi - 1.0;
            else mid = 0.0;
            cells.push_back({lo, hi, mid, event.contains(mid)});
        }
        lo = hi;
    }
    return cells;
}

inline double problem_scale(const MomentSpec& moments) {
    const auto& q = moments.values;
    double mu = q.size() > 1 ? q[1] : 0.0;
    double sig = q.size() > 2 ? std::sqrt(std::max(q[2] - mu * mu, 1e-12)) : 1.0;
    return std::max(1.0, std::abs(mu) + 3.0 * sig);
}

/// Natural width of the distribution; unbounded cells are parametrized in
/// these units so the Gram systems stay balanced even when the moments sit
/// far from the origin.
inline double moment_std(const MomentSpec& moments) {
    const auto& q = moments.values;
    double mu = q.size() > 1 ? q[1] : 0.0;
    double var = q.size() > 2 ? std::max(q[2] - mu * mu, 1e-8) : 1.0;
    return std::sqrt(var);
}

/// Sign of lim p(x) as x -> +inf (dir=+1) or -inf (dir=-1).
inline int limit_sign(const Poly& p, int dir) {
    if (p.is_zero()) return 0;
    double lead = p.coeffs().back();
    int d = p.degree();
    if (d == 0) return lead > 0 ? 1 : (lead < 0 ? -1 : 0);
    double v = (dir > 0 || d % 2 == 0) ? lead : -lead;
    return v > 0 ? 1 : -1;
}

/// Whether sup of g over the event (within the support) is +inf.
inline bool objective_unbounded_above(const PiecewisePolynomial& g, const EventSet& event, double A, double B) {
    for (const auto& cell : build_cells(g, event, A, B)) {
        if (!cell.in_event) continue;
        const Poly& p = g.pieces[g.piece_index(cell.mid)];
        if (!std::isfinite(cell.hi) && limit_sign(p, +1) > 0) return true;
        if (!std::isfinite(cell.lo) && limit_sign(p, -1) > 0) return true;
    }
    return false;
}

/// Indicator of the event's complement as a piecewise polynomial.
inline PiecewisePolynomial complement_indicator(const EventSet& event) {
    PiecewisePolynomial in_event = restrict_to_event(PiecewisePolynomial::constant(1.0), event);
    for (Poly& p : in_event.pieces) p = Poly::constant(1.0) - p;
    return in_event;
}

}  // namespace detail

namespace detail {

/// Core builder/solver; callers standardize first so the data stays O(1).
inline BoundResult dual_bound_impl(const DualBoundProblem& prob, const conic::SolverSettings& settings) {
    prob.moments.check_well_formed();
    if (!prob.moments.is_power_basis())
        throw std::invalid_argument("dual_bound: moment basis must be {1, x, ..., x^m}");
    if (std::holds_alternative<EventSet::Halfspace>(prob.event.kind))
        throw UnsupportedEvent("dual_bound: events must be half-lines, intervals or the full space");
    const int m = prob.moments.order();
    if (m < 2) throw std::invalid_argument("dual_bound: needs moments up to order at least 2");
    const double A = prob.support.lo[0], B = prob.support.hi[0];
    const double scale = detail::problem_scale(prob.moments);
    const double cell_scale = detail::moment_std(prob.moments);

    // Divergence is decided structurally: an objective unbounded over the event
    // diverges exactly when the worst-case event mass vanishes. That probe is a
    // plain (well-posed) moment problem, unlike the direct program, which is
    // only weakly infeasible on divergent instances.
    if (!prob.event.is_full_space() && detail::objective_unbounded_above(prob.objective, prob.event, A, B)) {
        DualBoundProblem probe = prob;
        probe.event = EventSet::full_space();
        probe.objective = detail::complement_indicator(prob.event);
        BoundResult complement_sup = dual_bound_impl(probe, settings);
        double worst_event_mass = 1.0 - complement_sup.value;
        // the probe itself carries solver noise around 1e-8, so the vanishing
        // threshold is padded well above it (practical event masses are >> 1e-6)
        if (worst_event_mass <= std::max(tolerances().event_mass_eps, 1e-6)) return BoundResult::divergent();
    }

    ConeProgram prog;
    std::vector<int> lam = prog.add_vars(m + 2);  // lambda_0..lambda_m, lambda_{m+1}
    const int lam_event = lam.back();
    prog.set_objective(LinExpr::var(lam_event));

    // budget row: sum_j lambda_j q_j <= 0
    LinExpr budget;
    for (int j = 0; j <= m; ++j)
        budget += LinExpr::var(lam[static_cast<std::size_t>(j)], prob.moments.values[static_cast<std::size_t>(j)]);
    prog.add_nonneg(-budget);

    const PiecewisePolynomial g_event = restrict_to_event(prob.objective, prob.event);

    if (prob.structure.is_none()) {
        for (const auto& cell : detail::build_cells(prob.objective, prob.event, A, B)) {
            std::vector<LinExpr> coeffs(static_cast<std::size_t>(
                                            std::max(m, prob.objective.degree())) + 1);
            for (int j = 0; j <= m; ++j) coeffs[static_cast<std::size_t>(j)] += LinExpr::var(lam[static_cast<std::size_t>(j)]);
            if (cell.in_event) {
                coeffs[0] += LinExpr::var(lam_event);
                const Poly& gp = prob.objective.pieces[prob.objective.piece_index(cell.mid)];
                for (int k = 0; k <= gp.degree(); ++k) coeffs[static_cast<std::size_t>(k)] -= gp.coeff(static_cast<std::size_t>(k));
            }
            nonneg_on_interval(prog, coeffs, cell.lo, cell.hi, cell_scale);
        }
    } else {
        if (std::isfinite(A) || std::isfinite(B))
            throw std::invalid_argument("dual_bound: structural classes are supported on the real line only");
        const double mu0 = prob.structure.center;
        // breakpoints of the reflected problem on u >= 0
        std::vector<double> upts = {0.0};
        auto add_u = [&](double v) {
            double u = std::abs(mu0 - v);
            if (u > 0.0) upts.push_back(u);
        };
        for (double b : prob.objective.breakpoints) add_u(b);
        for (double b : prob.event.boundaries()) add_u(b);
        std::sort(upts.begin(), upts.end());
        upts.erase(std::unique(upts.begin(), upts.end()), upts.end());

        if (prob.structure.kind == StructuralClass::Kind::Symmetric) {
            // sum_j lambda_j (h_j(mu-u) + h_j(mu+u))
            //   >= g(mu-u) 1_E(mu-u) + g(mu+u) 1_E(mu+u),   u >= 0
            for (std::size_t ci = 0; ci + 1 <= upts.size(); ++ci) {
                double lo = upts[ci];
                double hi = (ci + 1 < upts.size()) ? upts[ci + 1] : kInf;
                double um = std::isfinite(hi) ? 0.5 * (lo + hi) : lo + 1.0;
                std::vector<LinExpr> coeffs;
                auto accum = [&](const Poly& p, const LinExpr& v) {
                    if (coeffs.size() < static_cast<std::size_t>(p.degree()) + 1)
                        coeffs.resize(static_cast<std::size_t>(p.degree()) + 1);
                    for (int k = 0; k <= p.degree(); ++k) {
                        double c = p.coeff(static_cast<std::size_t>(k));
                        if (c != 0.0) coeffs[static_cast<std::size_t>(k)] += v * c;
                    }
                };
                for (int j = 0; j <= m; ++j) {
                    Poly hj = Poly::monomial(j).compose_affine(mu0, -1.0) + Poly::monomial(j).compose_affine(mu0, 1.0);
                    accum(hj, LinExpr::var(lam[static_cast<std::size_t>(j)]));
                }
                double ind = (prob.event.contains(mu0 - um) ? 1.0 : 0.0) + (prob.event.contains(mu0 + um) ? 1.0 : 0.0);
                if (ind != 0.0) accum(Poly::constant(ind), LinExpr::var(lam_event));
                Poly rhs = g_event.pieces[g_event.piece_index(mu0 - um)].compose_affine(mu0, -1.0) +
                           g_event.pieces[g_event.piece_index(mu0 + um)].compose_affine(mu0, 1.0);
                accum(rhs, LinExpr(-1.0));
                nonneg_on_interval(prog, coeffs, lo, hi, cell_scale);
            }
        } else {
            // integral transform: antiderivatives evaluated between mu-u and mu+u
            PiecewisePolynomial ind_event = restrict_to_event(PiecewisePolynomial::constant(1.0), prob.event);
            PiecewisePolynomial F1 = cumulative_antiderivative(ind_event);
            PiecewisePolynomial Fg = cumulative_antiderivative(g_event);
            for (std::size_t ci = 0; ci + 1 <= upts.size(); ++ci) {
                double lo = upts[ci];
                double hi = (ci + 1 < upts.size()) ? upts[ci + 1] : kInf;
                double um = std::isfinite(hi) ? 0.5 * (lo + hi) : lo + 1.0;
                std::vector<LinExpr> coeffs;
                auto accum = [&](const Poly& p, const LinExpr& v) {
                    if (coeffs.size() < static_cast<std::size_t>(p.degree()) + 1)
                        coeffs.resize(static_cast<std::size_t>(p.degree()) + 1);
                    for (int k = 0; k <= p.degree(); ++k) {
                        double c = p.coeff(static_cast<std::size_t>(k));
                        if (c != 0.0) coeffs[static_cast<std::size_t>(k)] += v * c;
                    }
                };
                auto transform = [&](const PiecewisePolynomial& F) {
                    return F.pieces[F.piece_index(mu0 + um)].compose_affine(mu0, 1.0) -
                           F.pieces[F.piece_index(mu0 - um)].compose_affine(mu0, -1.0);
                };
                for (int j = 0; j <= m; ++j) {
                    Poly Ij = Poly::monomial(j).antiderivative();
                    accum(Ij.compose_affine(mu0, 1.0) - Ij.compose_affine(mu0, -1.0),
                          LinExpr::var(lam[static_cast<std::size_t>(j)]));
                }
                accum(transform(F1), LinExpr::var(lam_event));
                accum(transform(Fg), LinExpr(-1.0));
                nonneg_on_interval(prog, coeffs, lo, hi, cell_scale);
            }
            // mode constraint: the Dirac-at-mode generator
            LinExpr mode;
            for (int j = 0; j <= m; ++j) mode += LinExpr::var(lam[static_cast<std::size_t>(j)], std::pow(mu0, j));
            if (prob.event.contains(mu0)) {
                mode += LinExpr::var(lam_event);
                mode -= prob.objective(mu0);
            }
            prog.add_nonneg(mode);
        }
    }

    auto outcome = conic::solve(prog, settings);
    BoundResult res;
    res.status = conic::map_status_for_moment_dual(outcome.status);
    if (res.status == BoundStatus::Tight) {
        res.value = outcome.objective;
        std::vector<double> cert(static_cast<std::size_t>(m) + 2);
        for (int j = 0; j <= m + 1; ++j) cert[static_cast<std::size_t>(j)] = outcome.x[lam[static_cast<std::size_t>(j)]];
        res.dual_certificate = std::move(cert);
        if (std::abs(res.value) > 1e8 * scale)
            throw SolverFailure("dual_bound: value exceeds the divergence review threshold");
    } else if (res.status == BoundStatus::Divergent) {
        res.value = kInf;
    } else {
        res.value = std::numeric_limits<double>::quiet_NaN();
    }
    return res;
}

/// Standardized moments of Y = (X - mu)/sigma from raw moments of X, in
/// extended precision (shifting high moments cancels catastrophically in
/// doubles).
inline std::vector<double> standardized_moments(const std::vector<double>& q, double mu, double sigma) {
    std::vector<double> out(q.size());
    for (std::size_t j = 0; j < q.size(); ++j) {
        long double acc = 0.0L;
        long double binom = 1.0L;
        for (std::size_t k = 0; k <= j; ++k) {
            acc += binom * static_cast<long double>(q[j - k]) * std::pow(-static_cast<long double>(mu), k);
            binom = binom * static_cast<long double>(j - k) / static_cast<long double>(k + 1);
        }
        out[j] = static_cast<double>(acc / std::pow(static_cast<long double>(sigma), j));
    }
    out[0] = 1.0;
    return out;
}

}  // namespace detail

/// Sharp upper bound on E[g(X) | X in event] over all distributions matching
/// the power moments (and structural class), by minimizing the last dual
/// variable subject to interval-SOS nonnegativity certificates. The problem is
/// standardized to the distribution's own units before solving (the bound is
/// unchanged; the returned certificate is mapped back to raw-moment space).
inline BoundResult dual_bound(const DualBoundProblem& prob, const conic::SolverSettings& settings = {}) {
    prob.moments.check_well_formed();
    if (!prob.moments.is_power_basis())
        throw std::invalid_argument("dual_bound: moment basis must be {1, x, ..., x^m}");
    const int m = prob.moments.order();
    if (m < 2) throw std::invalid_argument("dual_bound: needs moments up to order at least 2");
    const double mu = prob.moments.values[1];
    const double sigma = detail::moment_std(prob.moments);

    DualBoundProblem std_prob;
    std_prob.moments = MomentSpec::power_moments(detail::standardized_moments(prob.moments.values, mu, sigma));
    auto map_x = [&](double x) { return (x - mu) / sigma; };
    if (auto* h = std::get_if<EventSet::HalfLine>(&prob.event.kind)) {
        std_prob.event = h->dir == Direction::Geq ? EventSet::half_line_geq(map_x(h->threshold))
                                                  : EventSet::half_line_leq(map_x(h->threshold));
    } else if (auto* iv = std::get_if<EventSet::Interval>(&prob.event.kind)) {
        std_prob.event = EventSet::interval(map_x(iv->lo), map_x(iv->hi));
    } else if (prob.event.is_full_space()) {
        std_prob.event = EventSet::full_space();
    } else {
        throw UnsupportedEvent("dual_bound: events must be half-lines, intervals or the full space");
    }
    std::vector<double> bps;
    std::vector<Poly> pieces;
    for (double b : prob.objective.breakpoints) bps.push_back(map_x(b));
    for (const Poly& p : prob.objective.pieces) pieces.push_back(p.compose_affine(mu, sigma));
    std_prob.objective = PiecewisePolynomial(bps, pieces);
    std_prob.structure = prob.structure;
    if (!prob.structure.is_none()) std_prob.structure.center = map_x(prob.structure.center);
    std_prob.support = SupportBox::real_line();
    std_prob.support.lo[0] = std::isfinite(prob.support.lo[0]) ? map_x(prob.support.lo[0]) : -kInf;
    std_prob.support.hi[0] = std::isfinite(prob.support.hi[0]) ? map_x(prob.support.hi[0]) : kInf;

    BoundResult res = detail::dual_bound_impl(std_prob, settings);
    if (res.dual_certificate) {
        // lambda_j x^j coefficients from the standardized certificate:
        // sum_k lam~_k ((x - mu)/sigma)^k expanded in powers of x
        const std::vector<double>& lam_std = *res.dual_certificate;
        std::vector<double> lam(lam_std.size(), 0.0);
        for (int k = 0; k <= m; ++k) {
            Poly yk = Poly::monomial(k).compose_affine(-mu / sigma, 1.0 / sigma);
            for (int j = 0; j <= k; ++j)
                lam[static_cast<std::size_t>(j)] += lam_std[static_cast<std::size_t>(k)] * yk.coeff(static_cast<std::size_t>(j));
        }
        lam[static_cast<std::size_t>(m) + 1] = lam_std[static_cast<std::size_t>(m) + 1];
        res.dual_certificate = std::move(lam);
    }
    return res;
}

// ---------------------------------------------------------------------------
// Sweeps (figure reproductions emit CSV-ready rows)
// ---------------------------------------------------------------------------

struct SweepRow {
    double t = 0.0;
    BoundResult result;
    double wall_ms = 0.0;
    std::string error;  // nonempty when this point failed
};

/// Independent dual_bound solves over a sorted grid of event thresholds.
inline std::vector<SweepRow> sweep(const DualBoundProblem& tmpl, const std::vector<double>& t_grid,
                                   const conic::SolverSettings& settings = {}) {
    std::vector<SweepRow> rows(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        DualBoundProblem p = tmpl;
        Direction dir = Direction::Geq;
        if (auto* h = std::get_if<EventSet::HalfLine>(&tmpl.event.kind)) dir = h->dir;
        p.event = (dir == Direction::Geq) ? EventSet::half_line_geq(t_grid[i]) : EventSet::half_line_leq(t_grid[i]);
        rows[i].t = t_grid[i];
        auto start = std::chrono::steady_clock::now();
        try {
            rows[i].result = dual_bound(p, settings);
        } catch (const std::exception& e) {
            rows[i].error = e.what();
        }
        rows[i].wall_ms =
            std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count() /
            1000.0;
    }
    return rows;
}

}  // namespace condbound::sos
