#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "condbound/model.hpp"
#include "condbound/types.hpp"

namespace condbound::closedform {

enum class Branch { One, Two, Middle, Diverged, NoFeasibleTangent };

inline const char* to_string(Branch b) {
    switch (b) {
        case Branch::One: return "branch_1";
        case Branch::Two: return "branch_2";
        case Branch::Middle: return "middle";
        case Branch::Diverged: return "diverged";
        case Branch::NoFeasibleTangent: return "no_feasible_tangent";
    }
    return "?";
}

struct ClosedFormAnswer {
    BoundResult result;
    Branch branch = Branch::One;
    std::string note;  // maximizing-sequence description when divergent
};

namespace detail {

/// Bracketed bisection refined by secant steps; derivative-free, so it stays
/// robust on piecewise-defined functions.
inline double bracketed_root(const std::function<double(double)>& f, double lo, double hi, double f_lo,
                             double f_hi, double rel_tol = 1e-12) {
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo > 0) == (f_hi > 0)) throw RootNotBracketed("bracketed_root: no sign change on the bracket");
    for (int it = 0; it < 400; ++it) {
        double mid = 0.5 * (lo + hi);
        if (hi - lo <= rel_tol * std::max(1.0, std::abs(mid))) return mid;
        // alternate secant and bisection so a stalling secant cannot pin the
        // bracket against one endpoint
        double cand = mid;
        if (it % 2 == 0) {
            double denom = f_hi - f_lo;
            if (std::abs(denom) > 1e-300) cand = (lo * f_hi - hi * f_lo) / denom;
            if (!(cand > lo && cand < hi)) cand = mid;
        }
        double fc = f(cand);
        if (fc == 0.0) return cand;
        if ((fc > 0) == (f_lo > 0)) {
            lo = cand;
            f_lo = fc;
        } else {
            hi = cand;
            f_hi = fc;
        }
    }
    return 0.5 * (lo + hi);
}

/// Doubling scan from `start` for a sign change of f, up to `cap`.
inline std::pair<double, double> scan_bracket(const std::function<double(double)>& f, double start, double step,
                                              double cap) {
    double lo = start, f_lo = f(lo);
    while (true) {
        double hi = lo + step;
        if (hi > cap) throw RootNotBracketed("scan_bracket: no sign change found before the scan cap");
        double f_hi = f(hi);
        if ((f_lo > 0) != (f_hi > 0) || f_hi == 0.0) return {lo, hi};
        lo = hi;
        f_lo = f_hi;
        step *= 2.0;
    }
}

/// All real roots of a polynomial via the companion matrix.
inline std::vector<double> real_roots(const Poly& p) {
    const auto& c = p.coeffs();
    int n = p.degree();
    if (n < 1) return {};
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) C(i, n - 1) = -c[static_cast<std::size_t>(i)] / c[static_cast<std::size_t>(n)];
    for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(C);
    std::vector<double> roots;
    double scale = 0.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(es.eigenvalues()[i]));
    for (int i = 0; i < n; ++i)
        if (std::abs(es.eigenvalues()[i].imag()) <= 1e-8 * std::max(1.0, scale))
            roots.push_back(es.eigenvalues()[i].real());
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Mean-variance information
// ---------------------------------------------------------------------------

/// sup E[X | X >= t] over distributions with mean mu and variance sigma^2:
/// mu + sigma^2/(mu - t) for t < mu, divergent otherwise.
inline ClosedFormAnswer bound_mean_variance(double mu, double sigma, double t) {
    if (!(sigma > 0.0)) throw InvalidDispersion("bound_mean_variance: sigma must be strictly positive");
    ClosedFormAnswer ans;
    if (t >= mu) {
        ans.result = BoundResult::divergent();
        ans.branch = Branch::Diverged;
        ans.note = "maximizing sequence: (1/(k^2 s^2 + 1)) Dirac(mu + k s^2) + (k^2 s^2/(k^2 s^2 + 1)) Dirac(mu - 1/k)";
        return ans;
    }
    const double v = mu + sigma * sigma / (mu - t);
    ans.result.value = v;
    ans.result.status = BoundStatus::Tight;
    ans.branch = Branch::One;
    const double w2 = (mu - t) * (mu - t);
    const double pt = sigma * sigma / (sigma * sigma + w2);
    ExplicitDistribution d;
    d.add(pt, ExplicitDistribution::Dirac{t - atom_epsilon(t)});
    d.add(1.0 - pt, ExplicitDistribution::Dirac{v});
    ans.result.extremal = d;
    // dual parabola touching 0 at t and tangent to x - lam3 at x0 = lam3
    const double x0 = v, lam3 = v, dsq = (t - x0) * (t - x0);
    ans.result.dual_certificate = std::vector<double>{
        -t * (lam3 * (t - 2 * x0) + x0 * x0) / dsq,
        (t * t + x0 * (x0 - 2 * lam3)) / dsq,
        (lam3 - t) / dsq,
        lam3};
    return ans;
}

// ---------------------------------------------------------------------------
// Mean-MAD information on a bounded support
// ---------------------------------------------------------------------------

/// sup E[X | X >= t] with mean mu and mean absolute deviation d on [a, b].
/// Below the threshold the bound is mu + d(mu-t)/(2(mu-t)-d); above it the
/// problem turns uninformative and collapses to the support bound b.
inline ClosedFormAnswer bound_mean_mad(double mu, double d, double a, double b, double t) {
    if (!(d > 0.0)) throw InvalidDispersion("bound_mean_mad: d must be strictly positive");
    if (!(a < mu && mu < b)) throw PreconditionViolated("bound_mean_mad: mean must lie strictly inside [a, b]");
    if (t < a || t > b) throw SupportViolation("bound_mean_mad: t must lie in [a, b]");
    if (d > max_mad_on_support(mu, a, b) + 1e-12)
        throw InvalidDispersion("bound_mean_mad: MAD exceeds maximal MAD on support");

    ClosedFormAnswer ans;
    const double c = b - mu;
    const double threshold = mu - d * c / (2.0 * c - d);
    if (t < threshold) {
        const double e = mu - t;
        const double v = mu + d * e / (2.0 * e - d);
        ans.result.value = v;
        ans.result.status = BoundStatus::Tight;
        ans.branch = Branch::One;
        double p1 = d / (2.0 * e);
        ExplicitDistribution dist;
        dist.add(p1, ExplicitDistribution::Dirac{t - atom_epsilon(t)});
        dist.add(1.0 - p1, ExplicitDistribution::Dirac{v});
        ans.result.extremal = dist;
        // wedge certificate for the basis {1, x, |x - mu|}
        const double lam3 = v;
        ans.result.dual_certificate = std::vector<double>{
            ((t + lam3) * mu - 2.0 * t * lam3) / (2.0 * (t - mu)),
            (lam3 + t - 2.0 * mu) / (2.0 * (t - mu)),
            (t - lam3) / (2.0 * (t - mu)),
            lam3};
    } else {
        ans.result.value = b;
        ans.result.status = BoundStatus::Uninformative;
        ans.result.robust_value = b;
        ans.branch = Branch::Two;
        double x1 = (b * (d - 2.0 * mu) + 2.0 * mu * mu) / (-2.0 * b + d + 2.0 * mu);
        if (x1 >= t) x1 = t - atom_epsilon(t);  // keep the low atom out of the event
        double p2 = d / (2.0 * c);
        ExplicitDistribution dist;
        dist.add(1.0 - p2, ExplicitDistribution::Dirac{x1});
        dist.add(p2, ExplicitDistribution::Dirac{b});
        ans.result.extremal = dist;
        // horizontal-line certificate
        ans.result.dual_certificate = std::vector<double>{0.0, 0.0, 0.0, b};
    }
    return ans;
}

// ---------------------------------------------------------------------------
// General convex dispersion
// ---------------------------------------------------------------------------

/// sup E[X | X >= t] with mean mu and E[d(X)] = sigma_bar for a convex
/// dispersion function d. The tangency point x0 > t solving
///   (t - x0) sigma_bar + (x0 - mu) d(t) + (mu - t) d(x0) = 0
/// is both the bound and the upper support point of the extremal two-point
/// distribution.
inline ClosedFormAnswer bound_mean_convex_dispersion(double mu, double sigma_bar, const PiecewisePolynomial& d,
                                                     double t) {
    if (!(sigma_bar > 0.0)) throw InvalidDispersion("bound_mean_convex_dispersion: level must be positive");
    if (!(sigma_bar > d(mu)))
        throw InvalidDispersion("bound_mean_convex_dispersion: slater requires sigma_bar > d(mean)");

    const double dt = d(t);
    auto psi = [&](double x) { return (t - x) * sigma_bar + (x - mu) * dt + (mu - t) * d(x); };
    const double scale = std::max({1.0, std::abs(mu), std::abs(t), sigma_bar});
    const double x_max = mu + 1e6 * scale;

    // psi(t) = 0 by construction; walk right until psi goes negative, then
    // keep doubling until it comes back up through zero.
    double step = 1e-3 * scale;
    double lo = t;
    double f_lo = 0.0;
    bool dipped = false;
    double x = t;
    while (x < x_max) {
        double xn = x + step;
        double fn = psi(xn);
        if (!dipped && fn < 0.0) {
            dipped = true;
            lo = xn;
            f_lo = fn;
        } else if (dipped && fn >= 0.0) {
            double x0 = detail::bracketed_root(psi, lo, xn, f_lo, fn);
            ClosedFormAnswer ans;
            double denom_t = t * d(x0) - x0 * dt;
            double p_t = (sigma_bar * t - mu * dt) / denom_t;
            double p_x0 = (sigma_bar * x0 - mu * d(x0)) / (-denom_t);
            if (!(x0 > t) || p_t < -1e-10 || p_t > 1.0 + 1e-10 || p_x0 < -1e-10 || p_x0 > 1.0 + 1e-10) {
                ans.result = BoundResult::infeasible();
                ans.branch = Branch::NoFeasibleTangent;
                ans.note = "two-point distribution from the tangency system is not a probability";
                return ans;
            }
            ans.result.value = x0;
            ans.result.status = BoundStatus::Tight;
            ans.branch = Branch::One;
            ExplicitDistribution dist;
            dist.add(std::min(1.0, std::max(p_t, 1e-16)), ExplicitDistribution::Dirac{t - atom_epsilon(t)});
            dist.add(std::min(1.0, std::max(p_x0, 1e-16)), ExplicitDistribution::Dirac{x0});
            ans.result.extremal = dist;
            // certificate for the basis {1, x, d(x)}; right derivative of d
            double dprime = d.derivative_right(x0);
            double delta = (t - mu) * dprime - dt + sigma_bar;
            ans.result.dual_certificate = std::vector<double>{
                (mu * dt - sigma_bar * t) / delta,
                (sigma_bar - dt) / delta,
                (t - mu) / delta,
                x0};
            return ans;
        } else if (dipped) {
            lo = xn;
            f_lo = fn;
        }
        x = xn;
        step *= 2.0;
    }
    throw RootNotBracketed("bound_mean_convex_dispersion: no tangency point found before the scan cap");
}

// ---------------------------------------------------------------------------
// Symmetric distributions
// ---------------------------------------------------------------------------

/// sup E[X | X >= t] over symmetric distributions with mean mu, std sigma.
inline ClosedFormAnswer bound_symmetric(double mu, double sigma, double t) {
    if (!(sigma > 0.0)) throw InvalidDispersion("bound_symmetric: sigma must be strictly positive");
    ClosedFormAnswer ans;
    if (t >= mu) {
        ans.result = BoundResult::divergent();
        ans.branch = Branch::Diverged;
        ans.note = "maximizing sequence: (1 - s^2/k^2) Dirac(mu) + (s^2/(2k^2)) (Dirac(mu-k) + Dirac(mu+k))";
        return ans;
    }
    const double e2 = (t - mu) * (t - mu);
    if (t < mu - sigma) {
        const double v = mu + (mu - t) * sigma * sigma / (2.0 * e2 - sigma * sigma);
        ans.result.value = v;
        ans.result.status = BoundStatus::Tight;
        ans.branch = Branch::One;
        double p = sigma * sigma / e2;
        ExplicitDistribution dist;
        dist.add(1.0 - p, ExplicitDistribution::Dirac{mu});
        dist.add(p, ExplicitDistribution::SymmetricDiracPair{mu, mu - t + atom_epsilon(t)});
        ans.result.extremal = dist;
        double lam2 = (mu - t) / (2.0 * e2 - sigma * sigma);
        ans.result.dual_certificate = std::vector<double>{-lam2 * (mu * mu + sigma * sigma), 0.0, lam2, v};
    } else {
        const double v = mu + sigma;
        ans.result.value = v;
        ans.result.status = BoundStatus::Tight;
        ans.branch = Branch::Two;
        // keep the lower atom strictly below t when t sits exactly on the pair
        double offset = sigma;
        if (mu - offset >= t) offset = mu - t + atom_epsilon(t);
        ExplicitDistribution dist;
        dist.add(1.0, ExplicitDistribution::SymmetricDiracPair{mu, offset});
        ans.result.extremal = dist;
        double lam2 = 1.0 / (4.0 * sigma);
        ans.result.dual_certificate = std::vector<double>{-lam2 * (mu * mu + sigma * sigma), 0.0, lam2, v};
    }
    return ans;
}

// ---------------------------------------------------------------------------
// Symmetric unimodal distributions
// ---------------------------------------------------------------------------

/// Threshold below which the quartic tangency branch applies: the admissible
/// root reaches sqrt(3) sigma (mixture weight 1) exactly at mu - (3 sqrt(3)/5) sigma.
/// The published threshold constant and the sign of the quartic's first term
/// do not match the published reduced objective; differentiating that
/// objective gives the versions used here, and the SOS dual bound and the
/// generator oracle both confirm them.
inline double symmetric_unimodal_threshold(double mu, double sigma) {
    return mu - 3.0 * std::sqrt(3.0) / 5.0 * sigma;
}

namespace detail {

/// First-order condition of the reduced problem, a quartic in x0:
///   6 s^2 x0^2 (x0^2 - 3 (t-mu)^2) + 9 s^4 (mu - t - x0)^2 = 0.
inline Poly unimodal_quartic(double mu, double sigma, double t) {
    const double e = mu - t, s2 = sigma * sigma;
    return Poly({9.0 * s2 * s2 * e * e, -18.0 * s2 * s2 * e, 9.0 * s2 * s2 - 18.0 * s2 * e * e, 0.0, 6.0 * s2});
}

/// Certificate for the integral-transform dual. The constant and linear
/// moment rows only enter the transformed constraint through lam0 + lam1*mu,
/// fixing the gauge lam1 = 0, and the budget row is tight, so
/// lam0 = -lam2 (mu^2 + sigma^2). In the quartic branch the mode row is also
/// tight (the Dirac at the mode carries mass), pinning lam2 = (lam3-mu)/s^2;
/// in the middle branch the tangency at x0 = sqrt(3) sigma pins it instead.
inline std::vector<double> unimodal_certificate(double mu, double sigma, double x0, double lam3,
                                                bool mode_tight) {
    const double s2 = sigma * sigma;
    double lam2 = mode_tight ? (lam3 - mu) / s2 : (mu + x0 - lam3) / (2.0 * (x0 * x0 - s2));
    return {-lam2 * (mu * mu + s2), 0.0, lam2, lam3};
}

}  // namespace detail

/// sup E[X | X >= t] over symmetric unimodal distributions with mean (and
/// mode) mu and std sigma.
inline ClosedFormAnswer bound_symmetric_unimodal(double mu, double sigma, double t) {
    if (!(sigma > 0.0)) throw InvalidDispersion("bound_symmetric_unimodal: sigma must be strictly positive");
    ClosedFormAnswer ans;
    if (t >= mu) {
        ans.result = BoundResult::divergent();
        ans.branch = Branch::Diverged;
        ans.note = "maximizing sequence: (1 - 3 s^2/k^2) Dirac(mu) + (3 s^2/k^2) Uniform(mu-k, mu+k)";
        return ans;
    }
    const double threshold = symmetric_unimodal_threshold(mu, sigma);
    const double r3s = std::sqrt(3.0) * sigma;
    if (t >= threshold) {
        const double v = 0.5 * (mu + t + r3s);
        ans.result.value = v;
        ans.result.status = BoundStatus::Tight;
        ans.branch = Branch::Middle;
        ExplicitDistribution dist;
        dist.add(1.0, ExplicitDistribution::UniformInterval{mu - r3s, mu + r3s});
        ans.result.extremal = dist;
        ans.result.dual_certificate = detail::unimodal_certificate(mu, sigma, r3s, v, false);
        return ans;
    }

    // quartic tangency branch: bisection on [sqrt(3) sigma, scan cap], plus a
    // companion-matrix sweep to assert the admissible root is unique
    Poly quartic = detail::unimodal_quartic(mu, sigma, t);
    auto f = [&](double x) { return quartic(x); };
    auto bracket = detail::scan_bracket(f, r3s, 0.5 * sigma, mu + 1e6 * std::max({1.0, std::abs(mu), sigma}));
    double x0 = detail::bracketed_root(f, bracket.first, bracket.second, f(bracket.first), f(bracket.second));

    std::vector<double> roots = detail::real_roots(quartic);
    int admissible = 0;
    for (double r : roots)
        if (r >= r3s - 1e-9 * std::max(1.0, r3s)) ++admissible;
    if (admissible != 1) {
        std::string msg = "bound_symmetric_unimodal: expected exactly one admissible quartic root, found ";
        msg += std::to_string(admissible) + " (all real roots:";
        for (double r : roots) msg += " " + std::to_string(r);
        msg += ")";
        throw QuarticRootNotFound(msg);
    }

    const double x03 = x0 * x0 * x0, s2 = sigma * sigma;
    const double v = (4.0 * mu * x03 - 3.0 * s2 * (t + x0 - mu) * (t - x0 + mu)) /
                     (4.0 * x03 - 6.0 * s2 * (t + x0 - mu));
    ans.result.value = v;
    ans.result.status = BoundStatus::Tight;
    ans.branch = Branch::One;
    double p = 3.0 * s2 / (x0 * x0);
    ExplicitDistribution dist;
    dist.add(1.0 - p, ExplicitDistribution::Dirac{mu});
    dist.add(p, ExplicitDistribution::UniformInterval{mu - x0, mu + x0});
    ans.result.extremal = dist;
    ans.result.dual_certificate = detail::unimodal_certificate(mu, sigma, x0, v, true);
    return ans;
}

// ---------------------------------------------------------------------------
// Conditional tail probability on the nonnegative half-line
// ---------------------------------------------------------------------------

/// Branch thresholds for sup P(X >= z | X >= p), X >= 0, mean mu, std sigma.
/// Below z_lo the bound saturates at 1; above z_hi it is the one-sided
/// Chebyshev ratio. z_hi is infinite when mu - p <= sigma.
inline double tail_probability_z_lo(double mu, double sigma, double p) {
    return mu + sigma * sigma / (mu - p);
}
inline double tail_probability_z_hi(double mu, double sigma, double p) {
    const double w = mu - p;
    if (!(w > sigma)) return kInf;
    return mu + 2.0 * sigma * sigma * w / (w * w - sigma * sigma);
}

/// sup P(X >= z | X >= p) for a nonnegative random variable with mean mu and
/// std sigma, z >= p, 0 < p < mu. The middle branch is
///   ((w^2 + s^2) / (2w(z - mu) + w^2 - s^2))^2,  w = mu - p,
/// continuous with both neighbors; the published form of this proposition
/// carries sign typos in the middle denominator and the upper threshold, and
/// the discretized primal oracle confirms the corrected version used here.
inline ClosedFormAnswer bound_conditional_tail_probability(double mu, double sigma, double p, double z) {
    if (!(sigma > 0.0)) throw InvalidDispersion("bound_conditional_tail_probability: sigma must be positive");
    if (!(z >= p) || !(p < mu))
        throw PreconditionViolated("bound_conditional_tail_probability: requires z >= p and p < mu");
    if (!(p > 0.0))
        throw PreconditionViolated(
            "bound_conditional_tail_probability: requires p > 0 (the support boundary regime differs)");
    const double w = mu - p, s2 = sigma * sigma;
    const double z_lo = tail_probability_z_lo(mu, sigma, p);
    const double z_hi = tail_probability_z_hi(mu, sigma, p);
    ClosedFormAnswer ans;
    ans.result.status = BoundStatus::Tight;

    if (z >= z_hi) {
        // one-sided chebyshev ratio; the two-point extremal lies inside the event
        const double v = z - mu;
        ans.result.value = s2 / (s2 + v * v);
        ans.branch = Branch::One;
        double x0 = mu - s2 / v;
        double pz = s2 / (s2 + v * v);
        ExplicitDistribution dist;
        dist.add(1.0 - pz, ExplicitDistribution::Dirac{x0});
        dist.add(pz, ExplicitDistribution::Dirac{z});
        ans.result.extremal = dist;
        double den = (s2 + v * v) * (s2 + v * v);
        ans.result.dual_certificate = std::vector<double>{
            v * (mu * mu * v - s2 * (mu + z)) / den,
            2.0 * v * (mu * mu + s2 - mu * z) / den,
            v * v / den,
            s2 / (s2 + v * v)};
    } else if (z > z_lo) {
        const double denom = 2.0 * w * (z - mu) + w * w - s2;
        const double ratio = (w * w + s2) / denom;
        ans.result.value = ratio * ratio;
        ans.branch = Branch::Middle;
        // three-point extremal {p-, c, z} solving the moment system
        const double c = (mu * mu + s2 - p * p) / (2.0 * w);
        Eigen::Matrix3d A;
        Eigen::Vector3d b;
        A << 1.0, 1.0, 1.0, p, c, z, p * p, c * c, z * z;
        b << 1.0, mu, mu * mu + s2;
        Eigen::Vector3d q = A.colPivHouseholderQr().solve(b);
        ExplicitDistribution dist;
        dist.add(std::max(q[0], 1e-16), ExplicitDistribution::Dirac{p - atom_epsilon(p)});
        dist.add(std::max(q[1], 1e-16), ExplicitDistribution::Dirac{c});
        dist.add(std::max(q[2], 1e-16), ExplicitDistribution::Dirac{z});
        ans.result.extremal = dist;
        double lam2 = 1.0 / ((z - c) * (z - c));
        double lam3 = ans.result.value;
        ans.result.dual_certificate = std::vector<double>{lam2 * c * c - lam3, -2.0 * lam2 * c, lam2, lam3};
    } else {
        // the event keeps room for a feasible pair below p and above z; the
        // pair is built from the exact boundary, then its low atom is shifted
        // to the left limit
        ans.result.value = 1.0;
        ans.branch = Branch::Two;
        double hi_atom = mu + s2 / w;
        double p_lo = s2 / (s2 + w * w);
        ExplicitDistribution dist;
        dist.add(p_lo, ExplicitDistribution::Dirac{p - atom_epsilon(p)});
        dist.add(1.0 - p_lo, ExplicitDistribution::Dirac{hi_atom});
        ans.result.extremal = dist;
        ans.result.dual_certificate = std::vector<double>{0.0, 0.0, 0.0, 1.0};
    }
    return ans;
}

// ---------------------------------------------------------------------------
// Regret-optimal monopoly price
// ---------------------------------------------------------------------------

struct RegretPrice {
    double price = 0.0;
    double regret = 0.0;
};

/// The price at which the two branches of the worst-case relative-regret
/// objective agree:
///   sigma^2/(p(mu-p)) + mu/p  =  sigma^2/(mu-p)^2 + 1.
inline RegretPrice optimal_regret_price(double mu, double sigma) {
    if (!(sigma > 0.0)) throw InvalidDispersion("optimal_regret_price: sigma must be strictly positive");
    if (!(mu > 0.0)) throw PreconditionViolated("optimal_regret_price: mu must be strictly positive");
    const double s2 = sigma * sigma;
    auto branch_low = [&](double p) { return s2 / (p * (mu - p)) + mu / p; };
    auto branch_high = [&](double p) { return s2 / ((mu - p) * (mu - p)) + 1.0; };
    auto f = [&](double p) { return branch_low(p) - branch_high(p); };
    double lo = 1e-12 * mu, hi = mu * (1.0 - 1e-12);
    double f_lo = f(lo), f_hi = f(hi);
    if (!(f_lo > 0.0) || !(f_hi < 0.0))
        throw RootNotBracketed("optimal_regret_price: branch difference does not change sign on (0, mu)");
    double p_star = detail::bracketed_root(f, lo, hi, f_lo, f_hi);
    return {p_star, branch_high(p_star)};
}

}  // namespace condbound::closedform
