#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "condbound/types.hpp"

namespace condbound {

// ---------------------------------------------------------------------------
// Exact expectations for explicit distributions
// ---------------------------------------------------------------------------

namespace detail {

/// E[g(X) 1_E(X)] contribution of one unit-mass component.
inline double component_event_integral(const ExplicitDistribution::Component& comp,
                                       const PiecewisePolynomial& g, const EventSet& event) {
    using D = ExplicitDistribution::Dirac;
    using U = ExplicitDistribution::UniformInterval;
    using S = ExplicitDistribution::SymmetricDiracPair;
    if (auto* d = std::get_if<D>(&comp)) return event.contains(d->point) ? g(d->point) : 0.0;
    if (auto* u = std::get_if<U>(&comp)) {
        auto iv = event.clip(u->lo, u->hi);
        if (!iv) return 0.0;
        return g.integral(iv->first, iv->second) / (u->hi - u->lo);
    }
    auto& s = std::get<S>(comp);
    double a = s.center - s.offset, b = s.center + s.offset;
    double v = 0.0;
    if (event.contains(a)) v += 0.5 * g(a);
    if (event.contains(b)) v += 0.5 * g(b);
    return v;
}

inline double component_event_mass(const ExplicitDistribution::Component& comp, const EventSet& event) {
    return component_event_integral(comp, PiecewisePolynomial::constant(1.0), event);
}

}  // namespace detail

/// Probability the distribution assigns to the event.
inline double event_mass(const ExplicitDistribution& dist, const EventSet& event) {
    double total_w = 0.0, mass = 0.0;
    for (const auto& wc : dist.components) {
        total_w += wc.weight;
        mass += wc.weight * detail::component_event_mass(wc.component, event);
    }
    return total_w > 0.0 ? mass / total_w : 0.0;
}

/// E[g(X) | X in event], computed exactly (closed-form polynomial integrals over
/// uniform components, point evaluation for Diracs). Weights are renormalized,
/// so rescaling all weights by a common constant leaves the result unchanged.
inline double conditional_expectation(const ExplicitDistribution& dist, const PiecewisePolynomial& g,
                                      const EventSet& event) {
    double total_w = 0.0, num = 0.0, den = 0.0;
    for (const auto& wc : dist.components) total_w += wc.weight;
    if (total_w <= 0.0) throw ZeroEventMass("conditional_expectation: empty distribution");
    for (const auto& wc : dist.components) {
        double w = wc.weight / total_w;
        num += w * detail::component_event_integral(wc.component, g, event);
        den += w * detail::component_event_mass(wc.component, event);
    }
    if (den <= tolerances().event_mass_eps)
        throw ZeroEventMass("conditional_expectation: distribution assigns zero mass to the event");
    return num / den;
}

/// E[h(X)] for a univariate moment function, exact per component.
inline double expectation(const ExplicitDistribution& dist, const MomentFunction& h) {
    using D = ExplicitDistribution::Dirac;
    using U = ExplicitDistribution::UniformInterval;
    using S = ExplicitDistribution::SymmetricDiracPair;
    double total_w = 0.0, v = 0.0;
    for (const auto& wc : dist.components) total_w += wc.weight;
    for (const auto& wc : dist.components) {
        double w = wc.weight / total_w;
        if (auto* d = std::get_if<D>(&wc.component)) {
            v += w * h(d->point);
        } else if (auto* u = std::get_if<U>(&wc.component)) {
            // exact for powers and piecewise polynomials
            if (auto* p = std::get_if<MomentFunction::Power>(&h.kind)) {
                v += w * Poly::monomial(p->exponent).integral(u->lo, u->hi) / (u->hi - u->lo);
            } else if (auto* f = std::get_if<MomentFunction::Piecewise>(&h.kind)) {
                v += w * f->f.integral(u->lo, u->hi) / (u->hi - u->lo);
            } else {
                throw std::invalid_argument("expectation: moment function not integrable over uniform component");
            }
        } else {
            auto& s = std::get<S>(wc.component);
            v += w * 0.5 * (h(s.center - s.offset) + h(s.center + s.offset));
        }
    }
    return v;
}

/// Raw power moments E[X^j], j = 0..m.
inline std::vector<double> power_moments_of(const ExplicitDistribution& dist, int m) {
    std::vector<double> q(static_cast<std::size_t>(m) + 1);
    for (int j = 0; j <= m; ++j) q[static_cast<std::size_t>(j)] = expectation(dist, MomentFunction::power(j));
    return q;
}

// ---------------------------------------------------------------------------
// Piecewise-polynomial helpers shared by the solvers
// ---------------------------------------------------------------------------

/// g(x) * 1_E(x) as a piecewise polynomial (zero outside the event).
inline PiecewisePolynomial restrict_to_event(const PiecewisePolynomial& g, const EventSet& event) {
    std::vector<double> bps = g.breakpoints;
    for (double b : event.boundaries()) bps.push_back(b);
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    std::vector<Poly> pieces;
    for (std::size_t i = 0; i <= bps.size(); ++i) {
        double lo = (i == 0) ? -kInf : bps[i - 1];
        double hi = (i == bps.size()) ? kInf : bps[i];
        double mid;
        if (std::isfinite(lo) && std::isfinite(hi)) mid = 0.5 * (lo + hi);
        else if (std::isfinite(lo)) mid = lo + 1.0;
        else if (std::isfinite(hi)) mid = hi - 1.0;
        else mid = 0.0;
        bool in_event = event.contains(mid);
        pieces.push_back(in_event ? g.pieces[g.piece_index(mid)] : Poly());
    }
    PiecewisePolynomial r(bps, pieces);
    r.domain_lo = g.domain_lo;
    r.domain_hi = g.domain_hi;
    return r;
}

/// Continuous antiderivative F with F(x0) = 0; x0 defaults to the first
/// breakpoint (or 0 when there are none).
inline PiecewisePolynomial cumulative_antiderivative(const PiecewisePolynomial& f) {
    std::vector<Poly> pieces;
    pieces.reserve(f.pieces.size());
    for (const Poly& p : f.pieces) pieces.push_back(p.antiderivative());
    double x0 = f.breakpoints.empty() ? 0.0 : f.breakpoints.front();
    // fix constants left and right of x0 so the result is continuous
    std::size_t i0 = 0;
    while (i0 < f.breakpoints.size() && x0 >= f.breakpoints[i0]) ++i0;
    pieces[i0] -= Poly::constant(pieces[i0](x0));
    for (std::size_t i = i0; i-- > 0;) {
        double bp = f.breakpoints[i];
        pieces[i] -= Poly::constant(pieces[i](bp) - pieces[i + 1](bp));
    }
    for (std::size_t i = i0 + 1; i < pieces.size(); ++i) {
        double bp = f.breakpoints[i - 1];
        pieces[i] -= Poly::constant(pieces[i](bp) - pieces[i - 1](bp));
    }
    PiecewisePolynomial r(f.breakpoints, pieces);
    r.domain_lo = f.domain_lo;
    r.domain_hi = f.domain_hi;
    return r;
}

// ---------------------------------------------------------------------------
// Validation of the regularity assumptions
// ---------------------------------------------------------------------------

struct ValidationReport {
    bool passed = true;
    std::vector<std::string> violations;

    void fail(std::string why) {
        passed = false;
        violations.push_back(std::move(why));
    }
};

/// Largest mean absolute deviation attainable on [a,b] with mean mu.
inline double max_mad_on_support(double mu, double a, double b) {
    return 2.0 * (mu - a) * (b - mu) / (b - a);
}

/// Checks strict consistency of the moment and dispersion information:
/// mean strictly inside the support, dispersion strictly positive (Slater),
/// power-moment vectors strictly positive definite in the Hankel sense.
inline ValidationReport validate(const AmbiguitySpec& spec) {
    ValidationReport rep;
    spec.moments.check_well_formed();

    const auto& q = spec.moments.values;
    double mu = q.size() > 1 && spec.moments.basis[1].is_power(1) ? q[1] : 0.0;
    bool have_mean = q.size() > 1 && spec.moments.basis[1].is_power(1);

    if (have_mean && spec.support.dim() == 1) {
        if (!(mu > spec.support.lo[0] && mu < spec.support.hi[0]))
            rep.fail("slater: mean not strictly inside support");
    }

    if (spec.moments.is_power_basis() && spec.moments.order() >= 2) {
        // Hankel matrices of the moment sequence must be positive definite for
        // the Slater condition on an unbounded support.
        int m = spec.moments.order();
        int k = m / 2;
        Eigen::MatrixXd H(k + 1, k + 1);
        for (int i = 0; i <= k; ++i)
            for (int j = 0; j <= k; ++j) H(i, j) = q[static_cast<std::size_t>(i + j)];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
        double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
        if (es.eigenvalues().minCoeff() <= tolerances().feasibility * scale)
            rep.fail("slater: moment Hankel matrix not strictly positive definite");
    }

    using DS = DispersionSpec;
    if (auto* v = std::get_if<DS::Variance>(&spec.dispersion.kind)) {
        if (!(v->sigma > 0.0)) rep.fail("dispersion: sigma must be strictly positive");
    } else if (auto* mad = std::get_if<DS::MAD>(&spec.dispersion.kind)) {
        if (!(mad->support_lo < mad->support_hi)) rep.fail("MAD support: requires lo < hi");
        if (!(mad->d > 0.0)) rep.fail("dispersion: MAD must be strictly positive");
        if (have_mean && mad->support_lo < mad->support_hi) {
            if (!(mu > mad->support_lo && mu < mad->support_hi))
                rep.fail("slater: mean not strictly inside MAD support");
            else if (!(mad->d < max_mad_on_support(mu, mad->support_lo, mad->support_hi)))
                rep.fail("MAD exceeds maximal MAD on support");
        }
    } else if (auto* cd = std::get_if<DS::ConvexDispersion>(&spec.dispersion.kind)) {
        if (!(cd->level > 0.0)) rep.fail("dispersion: level must be strictly positive");
        if (have_mean && !(cd->level > (cd->d)(mu)))
            rep.fail("slater: dispersion level not strictly above d(mean)");
    } else if (auto* cov = std::get_if<DS::CovarianceUB>(&spec.dispersion.kind)) {
        if (cov->Sigma.rows() != cov->Sigma.cols()) {
            rep.fail("covariance: matrix must be square");
        } else {
            if ((cov->Sigma - cov->Sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12)
                rep.fail("covariance: matrix must be symmetric");
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov->Sigma);
            double scale = std::max(1.0, cov->Sigma.cwiseAbs().maxCoeff());
            if (es.eigenvalues().minCoeff() <= tolerances().feasibility * scale)
                rep.fail("slater: covariance bound must be strictly positive definite");
        }
    } else if (auto* cm = std::get_if<DS::ComponentwiseMAD>(&spec.dispersion.kind)) {
        if (cm->bounds.minCoeff() <= 0.0) rep.fail("slater: componentwise MAD bounds must be strictly positive");
    }

    return rep;
}

}  // namespace condbound
