#pragma once

// Shared verification helpers for closed-form answers: dual-certificate
// sampling on dense grids, complementary slackness at extremal atoms, and
// moment consistency of extremal distributions (left-limit atoms snapped back
// to their boundary before the moment check).

#include <cmath>
#include <vector>

#include "condbound/closedform.hpp"
#include "condbound/model.hpp"

namespace checkers {

using namespace condbound;

struct CertificateReport {
    double min_slack = kInf;        // min over grid of lhs - rhs (>= -tol expected)
    double budget = -kInf;          // sum lambda_j q_j (<= tol expected)
    double max_atom_residual = 0.0; // complementary slackness at extremal atoms
};

/// Pointwise dual constraint for generalized moment bases:
///   sum_j lambda_j h_j(x) + lambda_{m+1} 1_E(x) - g(x) 1_E(x) >= 0.
inline double dual_slack_at(const std::vector<MomentFunction>& basis, const std::vector<double>& lam,
                            const EventSet& event, const PiecewisePolynomial& g, double x) {
    double v = 0.0;
    for (std::size_t j = 0; j < basis.size(); ++j) v += lam[j] * basis[j](x);
    if (event.contains(x)) v += lam[basis.size()] - g(x);
    return v;
}

inline CertificateReport check_certificate(const std::vector<MomentFunction>& basis,
                                           const std::vector<double>& values, const std::vector<double>& lam,
                                           const EventSet& event, const PiecewisePolynomial& g, double lo,
                                           double hi, int n, const ExplicitDistribution* extremal) {
    CertificateReport rep;
    rep.budget = 0.0;
    for (std::size_t j = 0; j < basis.size(); ++j) rep.budget += lam[j] * values[j];
    for (int i = 0; i < n; ++i) {
        double x = lo + (hi - lo) * i / (n - 1.0);
        rep.min_slack = std::min(rep.min_slack, dual_slack_at(basis, lam, event, g, x));
    }
    if (extremal) {
        for (const auto& wc : extremal->components) {
            if (auto* d = std::get_if<ExplicitDistribution::Dirac>(&wc.component)) {
                rep.max_atom_residual =
                    std::max(rep.max_atom_residual, std::abs(dual_slack_at(basis, lam, event, g, d->point)));
            }
        }
    }
    return rep;
}

/// Symmetric-pair dual constraint of the reflected problem, x >= 0.
inline double symmetric_slack_at(const std::vector<double>& lam, double mu, const EventSet& event,
                                 const PiecewisePolynomial& g, double x) {
    double lhs = 0.0;
    for (int j = 0; j <= 2; ++j)
        lhs += lam[static_cast<std::size_t>(j)] * (std::pow(mu - x, j) + std::pow(mu + x, j));
    double rhs = 0.0;
    if (event.contains(mu - x)) {
        lhs += lam[3];
        rhs += g(mu - x);
    }
    if (event.contains(mu + x)) {
        lhs += lam[3];
        rhs += g(mu + x);
    }
    return lhs - rhs;
}

/// Integral-transform dual constraint for unimodal generators, u > 0, with
/// g(z) = z and event {z >= t}.
inline double unimodal_slack_at(const std::vector<double>& lam, double mu, double t, double u) {
    double lhs = lam[0] * 2.0 * u + lam[1] * 2.0 * mu * u +
                 lam[2] * (2.0 * mu * mu * u + 2.0 / 3.0 * u * u * u);
    double lo = mu - u, hi = mu + u;
    double a = std::max(lo, t);
    if (a < hi) {
        lhs += lam[3] * (hi - a);
        lhs -= (hi * hi - a * a) / 2.0;
    }
    return lhs;
}

/// Moments of an extremal distribution with left-limit atoms snapped back to
/// the nearest event boundary before evaluation.
inline ExplicitDistribution snap_atoms(const ExplicitDistribution& d, const EventSet& event) {
    ExplicitDistribution out = d;
    for (auto& wc : out.components) {
        for (double b : event.boundaries()) {
            double eps = 2.0 * atom_epsilon(b);
            if (auto* dirac = std::get_if<ExplicitDistribution::Dirac>(&wc.component)) {
                if (std::abs(dirac->point - b) <= eps) dirac->point = b;
            } else if (auto* pair = std::get_if<ExplicitDistribution::SymmetricDiracPair>(&wc.component)) {
                if (std::abs(pair->center - pair->offset - b) <= eps) pair->offset = pair->center - b;
            }
        }
    }
    return out;
}

/// Max absolute moment mismatch of the (snapped) extremal against the spec.
inline double extremal_moment_error(const ExplicitDistribution& d, const std::vector<MomentFunction>& basis,
                                    const std::vector<double>& values, const EventSet& event) {
    ExplicitDistribution snapped = snap_atoms(d, event);
    double err = 0.0;
    for (std::size_t j = 0; j < basis.size(); ++j)
        err = std::max(err, std::abs(expectation(snapped, basis[j]) - values[j]));
    return err;
}

}  // namespace checkers
