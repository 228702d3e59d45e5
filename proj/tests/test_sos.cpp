#include <catch2/catch_amalgamated.hpp>

#include "condbound/sos.hpp"

using namespace condbound;
using Catch::Matchers::WithinAbs;

namespace {

sos::DualBoundProblem mean_var_problem(double mu, double sigma, double t) {
    sos::DualBoundProblem p;
    p.moments = MomentSpec::mean_variance(mu, sigma);
    p.event = EventSet::half_line_geq(t);
    p.objective = PiecewisePolynomial::identity();
    return p;
}

}  // namespace

TEST_CASE("exact moment helpers") {
    auto u = sos::uniform_power_moments(0.0, 5.0, 4);
    REQUIRE_THAT(u[1], WithinAbs(2.5, 1e-15));
    REQUIRE_THAT(u[2], WithinAbs(25.0 / 3.0, 1e-12));
    REQUIRE_THAT(u[4], WithinAbs(125.0, 1e-12));

    auto n = sos::normal_power_moments(0.0, 1.0, 6);
    REQUIRE_THAT(n[2], WithinAbs(1.0, 1e-15));
    REQUIRE_THAT(n[3], WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(n[4], WithinAbs(3.0, 1e-15));
    REQUIRE_THAT(n[6], WithinAbs(15.0, 1e-15));

    auto g = sos::normal_power_moments(2.0, 3.0, 2);
    REQUIRE_THAT(g[1], WithinAbs(2.0, 1e-15));
    REQUIRE_THAT(g[2], WithinAbs(13.0, 1e-12));
}

TEST_CASE("nonneg_on_interval certificates") {
    using conic::LinExpr;
    auto feasible = [](std::vector<LinExpr> coeffs, double lo, double hi) {
        conic::ConeProgram prog;
        sos::nonneg_on_interval(prog, coeffs, lo, hi);
        return conic::solve(prog).status == conic::SolveStatus::Optimal;
    };
    // x on [0, inf): s0 = 0, s1 = 1
    REQUIRE(feasible({LinExpr(0.0), LinExpr(1.0)}, 0.0, kInf));
    // x on the real line is not a sum of squares
    REQUIRE_FALSE(feasible({LinExpr(0.0), LinExpr(1.0)}, -kInf, kInf));
    // (x-1)(4-x) on [1,4]: s0 = 0, s1 = 1 with w(x) = (x-1)(4-x)
    REQUIRE(feasible({LinExpr(-4.0), LinExpr(5.0), LinExpr(-1.0)}, 1.0, 4.0));
    // same quadratic is negative outside [1,4]
    REQUIRE_FALSE(feasible({LinExpr(-4.0), LinExpr(5.0), LinExpr(-1.0)}, 0.0, 5.0));
    // -x on (-inf, 0]
    REQUIRE(feasible({LinExpr(0.0), LinExpr(-1.0)}, -kInf, 0.0));
}

TEST_CASE("dual_bound reproduces the mean-variance closed form") {
    // Uniform[0,5] matching moments: mu = 2.5, sigma^2 = 25/12
    auto q = sos::uniform_power_moments(0.0, 5.0, 2);
    double mu = q[1], var = q[2] - q[1] * q[1];
    for (double t : {0.5, 1.0, 2.0}) {
        sos::DualBoundProblem p;
        p.moments = MomentSpec::power_moments(q);
        p.event = EventSet::half_line_geq(t);
        p.objective = PiecewisePolynomial::identity();
        auto r = sos::dual_bound(p);
        REQUIRE(r.status == BoundStatus::Tight);
        REQUIRE_THAT(r.value, WithinAbs(mu + var / (mu - t), 1e-5));
    }
}

TEST_CASE("dual_bound diverges for thresholds at or above the mean with two moments") {
    for (double t : {0.0, 0.5, 2.0}) {
        auto r = sos::dual_bound(mean_var_problem(0.0, 1.0, t));
        REQUIRE(r.status == BoundStatus::Divergent);
        REQUIRE(std::isinf(r.value));
    }
}

TEST_CASE("dual_bound with indicator objective recovers the one-sided chebyshev bound") {
    double mu = 0.3, sigma = 1.2;
    for (double c : {1.0, 2.0, 3.5}) {
        sos::DualBoundProblem p;
        p.moments = MomentSpec::mean_variance(mu, sigma);
        p.event = EventSet::full_space();
        p.objective = PiecewisePolynomial::indicator_above(c);
        auto r = sos::dual_bound(p);
        REQUIRE(r.status == BoundStatus::Tight);
        double cantelli = sigma * sigma / (sigma * sigma + (c - mu) * (c - mu));
        REQUIRE_THAT(r.value, WithinAbs(cantelli, 1e-6));
    }
}

TEST_CASE("dual_bound of a constant objective is the constant") {
    sos::DualBoundProblem p = mean_var_problem(1.0, 2.0, 0.0);
    p.objective = PiecewisePolynomial::constant(1.0);
    auto r = sos::dual_bound(p);
    REQUIRE(r.status == BoundStatus::Tight);
    REQUIRE_THAT(r.value, WithinAbs(1.0, 1e-6));
}

TEST_CASE("symmetric dual bound matches the symmetric closed form") {
    // branch 1: t < mu - sigma
    {
        sos::DualBoundProblem p = mean_var_problem(0.0, 1.0, -2.0);
        p.structure = StructuralClass::symmetric(0.0);
        auto r = sos::dual_bound(p);
        REQUIRE(r.status == BoundStatus::Tight);
        REQUIRE_THAT(r.value, WithinAbs(2.0 / 7.0, 1e-5));
    }
    // branch 2: mu - sigma <= t < mu gives mu + sigma
    {
        sos::DualBoundProblem p = mean_var_problem(0.0, 1.0, -0.5);
        p.structure = StructuralClass::symmetric(0.0);
        auto r = sos::dual_bound(p);
        REQUIRE(r.status == BoundStatus::Tight);
        REQUIRE_THAT(r.value, WithinAbs(1.0, 1e-5));
    }
}

TEST_CASE("symmetric-unimodal dual bound matches the unimodal closed form middle branch") {
    sos::DualBoundProblem p = mean_var_problem(0.0, 1.0, -0.5);
    p.structure = StructuralClass::symmetric_unimodal(0.0);
    auto r = sos::dual_bound(p);
    REQUIRE(r.status == BoundStatus::Tight);
    REQUIRE_THAT(r.value, WithinAbs(0.5 * (-0.5 + std::sqrt(3.0)), 1e-5));
}

TEST_CASE("moment nesting and structure ordering") {
    auto q6 = sos::normal_power_moments(0.0, 1.0, 6);
    double t = -1.0;
    auto bound_for = [&](int m, StructuralClass sc) {
        sos::DualBoundProblem p;
        p.moments = MomentSpec::power_moments(std::vector<double>(q6.begin(), q6.begin() + m + 1));
        p.event = EventSet::half_line_geq(t);
        p.objective = PiecewisePolynomial::identity();
        p.structure = sc;
        return sos::dual_bound(p).value;
    };
    double b2 = bound_for(2, StructuralClass::none());
    double b4 = bound_for(4, StructuralClass::none());
    double b6 = bound_for(6, StructuralClass::none());
    REQUIRE(b6 <= b4 + 1e-6);
    REQUIRE(b4 <= b2 + 1e-6);
    double s2 = bound_for(2, StructuralClass::symmetric(0.0));
    double u2 = bound_for(2, StructuralClass::symmetric_unimodal(0.0));
    REQUIRE(u2 <= s2 + 1e-6);
    REQUIRE(s2 <= b2 + 1e-6);
    // true normal conditional mean is a lower bound on all of them
    double truth = std::exp(-t * t / 2.0) / std::sqrt(2.0 * M_PI) / (1.0 - 0.5 * std::erfc(-t / std::sqrt(2.0)));
    REQUIRE(u2 >= truth - 1e-6);
}

TEST_CASE("sweep propagates per-point status and a single-point grid equals a direct call") {
    sos::DualBoundProblem tmpl = mean_var_problem(0.0, 1.0, -1.0);
    auto rows = sos::sweep(tmpl, {-2.0, -1.0, 0.5});
    REQUIRE(rows.size() == 3);
    REQUIRE(rows[0].result.status == BoundStatus::Tight);
    REQUIRE(rows[2].result.status == BoundStatus::Divergent);
    auto direct = sos::dual_bound(mean_var_problem(0.0, 1.0, -1.0));
    REQUIRE_THAT(rows[1].result.value, WithinAbs(direct.value, 1e-9));
}
