#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "condbound/dro.hpp"
#include "condbound/oracle.hpp"

using namespace condbound;
using Catch::Matchers::WithinAbs;

namespace {

/// The section-4.3 style instance: X = (D, Z) with mean (5,5), sigma_D^2 = 2.25,
/// sigma_Z^2 = 1 and correlation rho; holding cost 1, penalty 5.
dro::ContextualInstance figure4_instance(double rho, double z0, double q, bool fixed_q = true) {
    dro::ContextualInstance inst;
    inst.n_y = 1;
    inst.n_z = 1;
    Eigen::Matrix2d Sigma;
    Sigma << 2.25, rho * 1.5, rho * 1.5, 1.0;
    inst.spec.moments = MomentSpec::power_moments({1.0, 5.0, 5.0});
    inst.spec.moments.basis = {MomentFunction::power(0), MomentFunction::monomial({1, 0}),
                               MomentFunction::monomial({0, 1})};
    inst.spec.dispersion.kind = DispersionSpec::CovarianceUB{Sigma};
    inst.spec.support = SupportBox::real_line(2);
    if (std::isfinite(z0)) {
        Eigen::VectorXd nz(1);
        nz << 1.0;
        inst.event = EventSet::halfspace(nz, z0, Direction::Geq);  // Z >= z0
    } else {
        inst.event = EventSet::full_space(2);
    }
    inst.cost = dro::newsvendor_cost(1.0, 5.0);
    inst.decision_set = fixed_q ? dro::DecisionSet::fixed_at(Eigen::VectorXd::Constant(1, q))
                                : dro::DecisionSet::nonneg();
    return inst;
}

double scarf_min(double h, double p, double mu, double sigma) {
    double best = kInf;
    for (int i = 0; i <= 4000; ++i) {
        double q = mu - 4 * sigma + 8.0 * sigma * i / 4000.0;
        best = std::min(best, dro::scarf_baseline(h, p, mu, sigma, q));
    }
    return best;
}

}  // namespace

TEST_CASE("newsvendor cost representation") {
    auto f = dro::newsvendor_cost(1.0, 5.0);
    Eigen::VectorXd q(1);
    q << 5.0;
    Eigen::VectorXd x(2);
    x << 5.0, 0.0;
    REQUIRE_THAT(f(q, x), WithinAbs(0.0, 1e-15));
    x << 7.0, 3.0;
    REQUIRE_THAT(f(q, x), WithinAbs(10.0, 1e-15));
    x << 3.0, -2.0;
    REQUIRE_THAT(f(q, x), WithinAbs(2.0, 1e-15));
    REQUIRE_THROWS_AS(dro::newsvendor_cost(0.0, 5.0), PreconditionViolated);
}

TEST_CASE("scarf baseline values") {
    REQUIRE_THAT(dro::scarf_baseline(1.0, 5.0, 5.0, 1.5, 5.0), WithinAbs(4.5, 1e-12));
    // at q = mu the square root collapses to sigma: (h+p) sigma / 2
    REQUIRE_THAT(dro::scarf_baseline(2.0, 3.0, 1.0, 0.7, 1.0), WithinAbs((2.0 + 3.0) * 0.7 / 2.0, 1e-12));
    // far above the mean the penalty term vanishes
    double q = 500.0;
    REQUIRE_THAT(dro::scarf_baseline(1.0, 5.0, 5.0, 1.5, q), WithinAbs(q - 5.0, 1e-2));
}

TEST_CASE("chebyshev full-space reduction equals the unconditional worst case") {
    // fixed q: the bound matches the closed-form mean-variance worst-case cost
    for (double q : {4.0, 5.0, 6.5}) {
        auto inst = figure4_instance(0.0, kInf, q);
        auto [nu, res] = dro::chebyshev_contextual(inst);
        REQUIRE(res.status == BoundStatus::Tight);
        REQUIRE_THAT(res.value, WithinAbs(dro::scarf_baseline(1.0, 5.0, 5.0, 1.5, q), 1e-6));
    }
    // jointly minimized over q >= 0: matches the minimized scarf value
    auto inst = figure4_instance(0.0, kInf, 0.0, false);
    auto [nu, res] = dro::chebyshev_contextual(inst);
    REQUIRE(res.status == BoundStatus::Tight);
    REQUIRE_THAT(res.value, WithinAbs(scarf_min(1.0, 5.0, 5.0, 1.5), 1e-5));
}

TEST_CASE("chebyshev constant cost returns the constant") {
    auto inst = figure4_instance(0.0, 1.0, 5.0);
    PiecewiseAffineMax constant;
    constant.decision_dim = 1;
    constant.uncertainty_dim = 2;
    PiecewiseAffineMax::Term t;
    t.slope_nu = Eigen::MatrixXd::Zero(2, 1);
    t.slope_0 = Eigen::VectorXd::Zero(2);
    t.intercept_nu = Eigen::VectorXd::Zero(1);
    t.intercept_0 = 3.25;
    constant.terms = {t};
    inst.cost = constant;
    auto [nu, res] = dro::chebyshev_contextual(inst);
    REQUIRE(res.status == BoundStatus::Tight);
    REQUIRE_THAT(res.value, WithinAbs(3.25, 1e-6));
}

TEST_CASE("chebyshev bound dominates the normal ground truth and grows with smaller events") {
    for (double rho : {0.0, 0.95}) {
        for (double q : {3.5, 5.0, 7.0}) {
            auto b1 = dro::chebyshev_contextual(figure4_instance(rho, 1.0, q)).second;
            auto b4 = dro::chebyshev_contextual(figure4_instance(rho, 4.0, q)).second;
            REQUIRE(b1.status == BoundStatus::Tight);
            REQUIRE(b4.status == BoundStatus::Tight);
            REQUIRE(b4.value >= b1.value - 1e-6);  // smaller event, larger bound
            for (double z0 : {1.0, 4.0}) {
                double truth = dro::ground_truth_conditional_cost({5.0, 5.0}, 1.5, 1.0, rho, 1.0, 5.0, q,
                                                                  EventSet::half_line_geq(z0));
                double bound = (z0 == 1.0 ? b1 : b4).value;
                REQUIRE(bound >= truth - 1e-6);
            }
        }
    }
}

TEST_CASE("chebyshev bound sandwiched by the bivariate grid oracle") {
    double q = 5.0, rho = 0.0, z0 = 1.0;
    auto inst = figure4_instance(rho, z0, q);
    auto [nu, res] = dro::chebyshev_contextual(inst);
    Eigen::Matrix2d Sigma;
    Sigma << 2.25, 0.0, 0.0, 1.0;
    Eigen::VectorXd qv(1);
    qv << q;
    auto cost = [&](const Eigen::Vector2d& x) { return inst.cost(qv, Eigen::VectorXd(x)); };
    auto grid = oracle::tensor_grid({5.0 - 9.0, 5.0 + 9.0, 257}, {5.0 - 6.0, 5.0 + 6.0, 257});
    auto [hc, hbar] = inst.normalized_halfspace();
    auto sol = oracle::primal_lp_chebyshev_2d({5.0, 5.0}, Sigma, Eigen::Vector2d(hc), hbar, cost, grid);
    REQUIRE(sol.result.value <= res.value + 1e-6);
    REQUIRE(sol.result.value >= res.value - 0.05);  // coarse grid, loose gap
}

TEST_CASE("joint minimization matches an outer grid search over the decision") {
    double rho = 0.95, z0 = 1.0;
    auto inst = figure4_instance(rho, z0, 0.0, false);
    auto [nu, res] = dro::chebyshev_contextual(inst);
    double best = kInf, best_q = 0.0;
    for (int i = 0; i <= 100; ++i) {
        double q = 2.0 + 7.0 * i / 100.0;
        double v = dro::chebyshev_contextual(figure4_instance(rho, z0, q)).second.value;
        if (v < best) {
            best = v;
            best_q = q;
        }
    }
    // golden-section polish around the best grid point
    double a = best_q - 0.07, b = best_q + 0.07;
    for (int it = 0; it < 40; ++it) {
        double m1 = b - (b - a) * 0.6180339887, m2 = a + (b - a) * 0.6180339887;
        double v1 = dro::chebyshev_contextual(figure4_instance(rho, z0, m1)).second.value;
        double v2 = dro::chebyshev_contextual(figure4_instance(rho, z0, m2)).second.value;
        if (v1 < v2) b = m2;
        else a = m1;
        best = std::min({best, v1, v2});
    }
    REQUIRE_THAT(res.value, WithinAbs(best, 1e-6));
}

TEST_CASE("mad contextual: affine cost with full-space event pins the mean") {
    dro::ContextualInstance inst;
    inst.n_y = 1;
    inst.n_z = 1;
    Eigen::Matrix2d f;
    f << 0.8, 1.1, 0.9, 0.7;
    Eigen::Vector2d m(1.5, -0.5);
    inst.spec.moments.basis = {MomentFunction::power(0), MomentFunction::monomial({1, 0}),
                               MomentFunction::monomial({0, 1})};
    inst.spec.moments.values = {1.0, m[0], m[1]};
    inst.spec.dispersion.kind = DispersionSpec::ComponentwiseMAD{f, m};
    inst.spec.support = SupportBox::real_line(2);
    inst.event = EventSet::full_space(2);
    PiecewiseAffineMax aff;
    aff.decision_dim = 1;
    aff.uncertainty_dim = 2;
    PiecewiseAffineMax::Term t;
    t.slope_nu = Eigen::MatrixXd::Zero(2, 1);
    t.slope_0 = Eigen::VectorXd(2);
    t.slope_0 << 2.0, -3.0;
    t.intercept_nu = Eigen::VectorXd::Zero(1);
    t.intercept_0 = 0.25;
    aff.terms = {t};
    inst.cost = aff;
    inst.decision_set = dro::DecisionSet::fixed_at(Eigen::VectorXd::Zero(1));
    auto [nu, res] = dro::mad_contextual(inst);
    REQUIRE(res.status == BoundStatus::Tight);
    REQUIRE_THAT(res.value, WithinAbs(2.0 * m[0] - 3.0 * m[1] + 0.25, 1e-7));
}

TEST_CASE("mad contextual newsvendor against the bivariate grid oracle") {
    // componentwise MAD values matching the figure-4 normal instance
    double sd = 1.5, sz = 1.0, rho = 0.0;
    double c = std::sqrt(2.0 / M_PI);
    Eigen::Matrix2d f;
    f << sd * c, std::sqrt(sd * sd + sz * sz + 2 * rho * sd * sz) * c,
        std::sqrt(sd * sd + sz * sz - 2 * rho * sd * sz) * c, sz * c;
    Eigen::Vector2d m(5.0, 5.0);
    dro::ContextualInstance inst;
    inst.n_y = 1;
    inst.n_z = 1;
    inst.spec.moments.basis = {MomentFunction::power(0), MomentFunction::monomial({1, 0}),
                               MomentFunction::monomial({0, 1})};
    inst.spec.moments.values = {1.0, m[0], m[1]};
    inst.spec.dispersion.kind = DispersionSpec::ComponentwiseMAD{f, m};
    inst.spec.support = SupportBox::real_line(2);
    Eigen::VectorXd nz(1);
    nz << 1.0;
    inst.event = EventSet::halfspace(nz, 1.0, Direction::Geq);
    inst.cost = dro::newsvendor_cost(1.0, 5.0);
    inst.decision_set = dro::DecisionSet::fixed_at(Eigen::VectorXd::Constant(1, 5.0));
    auto [nu, res] = dro::mad_contextual(inst);
    REQUIRE(res.status == BoundStatus::Tight);

    Eigen::VectorXd qv(1);
    qv << 5.0;
    auto cost = [&](const Eigen::Vector2d& x) { return inst.cost(qv, Eigen::VectorXd(x)); };
    auto xs = oracle::axis_with_tails(5.0 - 12.0, 5.0 + 12.0, 241, 2e6, 40);
    auto grid = oracle::tensor_grid_points(xs, xs);
    auto [hc, hbar] = inst.normalized_halfspace();
    auto sol = oracle::primal_lp_mad_2d(m, f, Eigen::Vector2d(hc), hbar, cost, grid);
    REQUIRE(sol.result.value <= res.value + 1e-6);
    REQUIRE(sol.result.value >= res.value - 2e-2);
}

TEST_CASE("degenerate events are flagged before solving") {
    // event far in the covariate tail: the worst-case event mass vanishes
    auto inst = figure4_instance(0.0, 5.0 + 1e7, 5.0);
    auto [nu, res] = dro::chebyshev_contextual(inst);
    REQUIRE(res.status == BoundStatus::Divergent);
}

TEST_CASE("ground truth conditional cost") {
    // independence: conditioning is irrelevant
    double un = dro::ground_truth_conditional_cost({5.0, 5.0}, 1.5, 1.0, 0.0, 1.0, 5.0, 5.0,
                                                   EventSet::full_space());
    double cond = dro::ground_truth_conditional_cost({5.0, 5.0}, 1.5, 1.0, 0.0, 1.0, 5.0, 5.0,
                                                     EventSet::half_line_geq(4.0));
    REQUIRE_THAT(cond, WithinAbs(un, 1e-9));

    // large order quantities leave only the holding cost
    double big = dro::ground_truth_conditional_cost({5.0, 5.0}, 1.5, 1.0, 0.95, 1.0, 5.0, 200.0,
                                                    EventSet::half_line_geq(4.0));
    // E[D | Z >= 4] for rho = 0.95: mu_D + rho sigma_D E[U | U >= -1]
    double u0 = -1.0;
    double lambda = dro::detail::std_normal_pdf(u0) / (1.0 - dro::detail::std_normal_cdf(u0));
    double ed = 5.0 + 0.95 * 1.5 * lambda;
    REQUIRE_THAT(big, WithinAbs(200.0 - ed, 1e-6));

    // monte-carlo agreement within three standard errors
    std::mt19937_64 rng(1234);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double rho = 0.95, sd = 1.5, sz = 1.0, h = 1.0, p = 5.0, q = 5.0, z0 = 4.0;
    double sum = 0.0, sum2 = 0.0;
    long n = 0, total = 2000000;
    for (long i = 0; i < total; ++i) {
        double uz = gauss(rng);
        double ud = rho * uz + std::sqrt(1 - rho * rho) * gauss(rng);
        double Z = 5.0 + sz * uz, D = 5.0 + sd * ud;
        if (Z < z0) continue;
        double cost_i = h * std::max(q - D, 0.0) + p * std::max(D - q, 0.0);
        sum += cost_i;
        sum2 += cost_i * cost_i;
        ++n;
    }
    double mc = sum / n;
    double se = std::sqrt((sum2 / n - mc * mc) / n);
    double quad = dro::ground_truth_conditional_cost({5.0, 5.0}, sd, sz, rho, h, p, q,
                                                     EventSet::half_line_geq(z0));
    REQUIRE_THAT(quad, WithinAbs(mc, 3.0 * se));
}

TEST_CASE("event mass range closed forms") {
    auto inst = figure4_instance(0.0, 4.0, 5.0);
    auto [lo, hi] = dro::event_mass_range(inst);
    // Z has mean 5, variance <= 1; event {Z >= 4}: inf = 1 - cantelli(4) = 0.5
    REQUIRE_THAT(lo, WithinAbs(0.5, 1e-12));
    REQUIRE_THAT(hi, WithinAbs(1.0, 1e-12));
}
