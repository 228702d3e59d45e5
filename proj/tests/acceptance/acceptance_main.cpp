// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exit code is the number of
// failed criteria.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "../checkers.hpp"
#include "condbound/closedform.hpp"
#include "condbound/dro.hpp"
#include "condbound/oracle.hpp"
#include "condbound/sos.hpp"

using namespace condbound;
namespace cf = condbound::closedform;

namespace {

struct Criterion {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (detail.size() < 400) detail += (detail.empty() ? "" : "; ") + why;
    }
};

std::mt19937_64 rng(20260810);
double unif(double lo, double hi) {
    return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

struct OracleStats {
    int max_atoms = 0;
    int basic_count_le_m1 = 0;  // solutions with at most m+1 atoms
    int total = 0;
    double worst_over = -kInf;   // oracle minus closed form (should stay <= 1e-6)
    double worst_under = -kInf;  // closed form minus oracle (should stay <= tol)
};

/// Closed-form value v versus the 1e4-point oracle; updates the shared stats.
bool check_against_oracle(Criterion& c, OracleStats& stats, const std::string& label,
                          const std::vector<MomentFunction>& basis, const std::vector<double>& values,
                          const EventSet& event, const PiecewisePolynomial& g, double v,
                          oracle::GridSpec grid) {
    AmbiguitySpec spec;
    spec.moments.basis = basis;
    spec.moments.values = values;
    for (double b : event.boundaries()) {
        grid.forced.push_back(b);
        grid.forced.push_back(b - atom_epsilon(b));
    }
    for (double b : g.breakpoints) grid.forced.push_back(b);
    oracle::OracleSolution sol;
    try {
        sol = grid.mode == oracle::GridSpec::Mode::Atoms ? oracle::primal_lp(spec, event, g, grid)
                                                         : oracle::primal_lp_structured(spec, event, g, grid);
    } catch (const std::exception& e) {
        c.fail(label + ": oracle failed (" + e.what() + ")");
        return false;
    }
    double o = sol.result.value;
    double tol_under = std::max(1e-3, 1e-3 * std::abs(v));
    stats.total += 1;
    stats.worst_over = std::max(stats.worst_over, o - v);
    stats.worst_under = std::max(stats.worst_under, v - o);
    int atoms = static_cast<int>(oracle::extract_support(sol, 1e-9).components.size());
    stats.max_atoms = std::max(stats.max_atoms, atoms);
    if (atoms <= sol.moment_rows) stats.basic_count_le_m1 += 1;
    if (atoms > sol.moment_rows + 1) c.fail(label + ": vertex carries more than m+2 atoms");
    if (o > v + 1e-6) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s: oracle exceeds closed form by %.2e", label.c_str(), o - v);
        c.fail(buf);
        return false;
    }
    if (o < v - tol_under) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s: oracle gap %.2e above tolerance %.2e", label.c_str(), v - o, tol_under);
        c.fail(buf);
        return false;
    }
    return true;
}

std::vector<MomentFunction> mean_var_basis() {
    return {MomentFunction::power(0), MomentFunction::power(1), MomentFunction::power(2)};
}

// ---------------------------------------------------------------------------

OracleStats g_stats;
double g_max_slackness = 0.0;  // worst complementary-slackness residual seen

Criterion criterion1() {
    Criterion c;
    const int trials = 200;
    for (int i = 0; i < trials; ++i) {
        // proposition 1
        {
            double mu = unif(-10, 10), sigma = unif(0.1, 5.0);
            double t = mu - unif(0.05, 3.0) * sigma;
            auto ans = cf::bound_mean_variance(mu, sigma, t);
            auto grid = oracle::GridSpec::univariate(mu - 25 * sigma, mu + 25 * sigma, 10000);
            check_against_oracle(c, g_stats, "prop1", mean_var_basis(),
                                 {1.0, mu, sigma * sigma + mu * mu}, EventSet::half_line_geq(t),
                                 PiecewisePolynomial::identity(), ans.result.value, grid);
            auto snapped = checkers::snap_atoms(*ans.result.extremal, EventSet::half_line_geq(t));
            for (const auto& wc : snapped.components) {
                auto* dd = std::get_if<ExplicitDistribution::Dirac>(&wc.component);
                double resid = std::abs(checkers::dual_slack_at(mean_var_basis(), *ans.result.dual_certificate,
                                                                EventSet::half_line_geq(t),
                                                                PiecewisePolynomial::identity(), dd->point));
                g_max_slackness = std::max(g_max_slackness, resid);
            }
        }
        // proposition 2
        {
            double mu = unif(-10, 10), s = unif(0.5, 5.0);
            double a = mu - unif(1.0, 5.0) * s, b = mu + unif(1.0, 5.0) * s;
            double d = unif(0.05, 0.85) * max_mad_on_support(mu, a, b);
            double t = a + unif(0.02, 0.96) * (b - a);
            auto ans = cf::bound_mean_mad(mu, d, a, b, t);
            std::vector<MomentFunction> basis = {MomentFunction::power(0), MomentFunction::power(1),
                                                 MomentFunction::piecewise(PiecewisePolynomial::abs_deviation(mu))};
            auto grid = oracle::GridSpec::univariate(a, b, 10000);
            grid.forced = {mu};
            check_against_oracle(c, g_stats, "prop2", basis, {1.0, mu, d}, EventSet::half_line_geq(t),
                                 PiecewisePolynomial::identity(), ans.result.value, grid);
            auto snapped = checkers::snap_atoms(*ans.result.extremal, EventSet::half_line_geq(t));
            for (const auto& wc : snapped.components) {
                auto* dd = std::get_if<ExplicitDistribution::Dirac>(&wc.component);
                double resid = std::abs(checkers::dual_slack_at(basis, *ans.result.dual_certificate,
                                                                EventSet::half_line_geq(t),
                                                                PiecewisePolynomial::identity(), dd->point));
                g_max_slackness = std::max(g_max_slackness, resid);
            }
        }
        // proposition 4 over symmetric-pair generators
        {
            double mu = unif(-10, 10), sigma = unif(0.1, 5.0);
            double t = mu - unif(0.05, 3.0) * sigma;
            auto ans = cf::bound_symmetric(mu, sigma, t);
            auto grid = oracle::GridSpec::symmetric_pairs(mu, (mu - t) + 25 * sigma, 10000);
            grid.forced = {mu - t, (mu - t) + atom_epsilon(t), sigma};
            check_against_oracle(c, g_stats, "prop4", mean_var_basis(), {1.0, mu, sigma * sigma + mu * mu},
                                 EventSet::half_line_geq(t), PiecewisePolynomial::identity(), ans.result.value,
                                 grid);
        }
        // proposition 5 over dirac-plus-uniform generators
        {
            double mu = unif(-10, 10), sigma = unif(0.1, 5.0);
            double t = mu - unif(0.05, 3.0) * sigma;
            auto ans = cf::bound_symmetric_unimodal(mu, sigma, t);
            auto grid = oracle::GridSpec::dirac_plus_uniforms(mu, (mu - t) + 25 * sigma, 10000);
            grid.forced = {std::sqrt(3.0) * sigma, mu - t};
            check_against_oracle(c, g_stats, "prop5", mean_var_basis(), {1.0, mu, sigma * sigma + mu * mu},
                                 EventSet::half_line_geq(t), PiecewisePolynomial::identity(), ans.result.value,
                                 grid);
        }
        // proposition 6 (all three branches, nonnegative support)
        {
            double mu = unif(1.0, 10.0), sigma = unif(0.1, std::min(5.0, 0.8 * mu));
            double p = unif(0.1, 0.9) * mu;
            double z = p + unif(0.0, 1.0) * (mu + 3 * sigma - p) * 1.2;
            if (z < p) z = p;
            auto ans = cf::bound_conditional_tail_probability(mu, sigma, p, z);
            auto grid = oracle::GridSpec::univariate(0.0, mu + 25 * sigma, 10000);
            check_against_oracle(c, g_stats, "prop6", mean_var_basis(), {1.0, mu, sigma * sigma + mu * mu},
                                 EventSet::half_line_geq(p), PiecewisePolynomial::indicator_above(z),
                                 ans.result.value, grid);
            auto snapped = checkers::snap_atoms(*ans.result.extremal, EventSet::half_line_geq(p));
            for (const auto& wc : snapped.components) {
                auto* dd = std::get_if<ExplicitDistribution::Dirac>(&wc.component);
                double resid = std::abs(checkers::dual_slack_at(mean_var_basis(), *ans.result.dual_certificate,
                                                                EventSet::half_line_geq(p),
                                                                PiecewisePolynomial::indicator_above(z), dd->point));
                g_max_slackness = std::max(g_max_slackness, resid);
            }
        }
    }
    char buf[200];
    std::snprintf(buf, sizeof buf, "1000 instances; worst oracle overflow %.2e, worst gap %.2e",
                  g_stats.worst_over, g_stats.worst_under);
    if (c.detail.empty()) c.detail = buf;
    return c;
}

Criterion criterion2() {
    Criterion c;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        double mu = unif(-5, 5), sigma = unif(0.2, 3.0), t = mu - unif(0.2, 3.0);
        PiecewisePolynomial x2(Poly({0.0, 0.0, 1.0}));
        auto a = cf::bound_mean_convex_dispersion(mu, sigma * sigma + mu * mu, x2, t);
        auto ref = cf::bound_mean_variance(mu, sigma, t);
        double err = std::abs(a.result.value - ref.result.value);
        worst = std::max(worst, err / std::max(1.0, std::abs(ref.result.value)));
        if (err > 1e-10 * std::max(1.0, std::abs(ref.result.value))) c.fail("x^2 reduction off");

        double dval = unif(0.2, 1.5);
        double b_sup = mu + 20.0 * dval;
        double thresh = mu - dval * (b_sup - mu) / (2.0 * (b_sup - mu) - dval);
        if (t < thresh) {
            auto m = cf::bound_mean_convex_dispersion(mu, dval, PiecewisePolynomial::abs_deviation(mu), t);
            auto mref = cf::bound_mean_mad(mu, dval, mu - 25 * dval, b_sup, t);
            double err2 = std::abs(m.result.value - mref.result.value);
            worst = std::max(worst, err2 / std::max(1.0, std::abs(mref.result.value)));
            if (err2 > 1e-10 * std::max(1.0, std::abs(mref.result.value))) c.fail("|x-mu| reduction off");
        }
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "worst relative deviation %.2e", worst);
    if (c.detail.empty()) c.detail = buf;
    return c;
}

struct SdpInstance {
    sos::DualBoundProblem prob;
    double value = 0.0;
};

std::vector<SdpInstance> g_sdp_instances;  // criterion 3 instances reused by criterion 6

Criterion criterion3() {
    Criterion c;
    double worst_gap = 0.0, worst_cert = 0.0;
    for (int i = 0; i < 50; ++i) {
        int m = 2 * (1 + i % 3);
        // ground-truth mixture with exact power moments
        ExplicitDistribution mix;
        double center = unif(-4, 4);
        int comps = 2 + static_cast<int>(rng() % 3);
        std::vector<double> w(static_cast<std::size_t>(comps));
        double total = 0.0;
        for (auto& wi : w) total += wi = unif(0.2, 1.0);
        for (int k = 0; k < comps; ++k) {
            double wk = w[static_cast<std::size_t>(k)] / total;
            // the first component is always a uniform so the moment vector
            // stays strictly inside the moment cone (slater) at every order
            if (k > 0 && rng() % 2 == 0) mix.add(wk, ExplicitDistribution::Dirac{center + unif(-2.5, 2.5)});
            else {
                double lo = center + unif(-3.0, 1.0);
                mix.add(wk, ExplicitDistribution::UniformInterval{lo, lo + unif(0.5, 3.0)});
            }
        }
        auto q = power_moments_of(mix, m);
        double mu = q[1], sd = std::sqrt(std::max(q[2] - mu * mu, 1e-4));

        sos::DualBoundProblem p;
        p.moments = MomentSpec::power_moments(q);
        double t = mu - unif(0.3, 2.0) * sd;
        p.event = EventSet::half_line_geq(t);
        int gsel = i % 3;
        if (gsel == 0) p.objective = PiecewisePolynomial::identity();
        else if (gsel == 1) p.objective = PiecewisePolynomial::indicator_above(mu + unif(-1.0, 1.5) * sd);
        else p.objective = PiecewisePolynomial::stop_loss(mu + unif(-1.0, 1.0) * sd);

        BoundResult r;
        try {
            r = sos::dual_bound(p);
        } catch (const std::exception& e) {
            char buf[320];
            std::string qs;
            for (double qq : q) qs += std::to_string(qq) + " ";
            std::snprintf(buf, sizeof buf, "dual_bound failed (m=%d g=%d t=%.6f q=[%s]): %s", m, gsel, t,
                          qs.c_str(), e.what());
            c.fail(buf);
            continue;
        }
        if (r.status != BoundStatus::Tight) {
            c.fail("unexpected nontight status on a nondivergent instance");
            continue;
        }
        g_sdp_instances.push_back({p, r.value});

        // certificate sampled nonnegativity
        const auto& lam = *r.dual_certificate;
        double lo = mu - 20 * sd, hi = mu + 20 * sd;
        double min_slack = kInf;
        for (int k = 0; k < 10000; ++k) {
            double x = lo + (hi - lo) * k / 9999.0;
            double v = 0.0;
            for (int j = 0; j <= m; ++j) v += lam[static_cast<std::size_t>(j)] * std::pow(x, j);
            if (p.event.contains(x)) v += lam[static_cast<std::size_t>(m) + 1] - p.objective(x);
            min_slack = std::min(min_slack, v);
        }
        worst_cert = std::max(worst_cert, -min_slack);
        if (min_slack < -1e-6) c.fail("certificate dips below -1e-6");

        AmbiguitySpec spec;
        spec.moments = p.moments;
        double target = std::max(1e-4, 1e-3 * std::abs(r.value));
        try {
            auto grid = oracle::default_univariate_grid(spec, p.event, p.objective, 8192);
            auto ref = oracle::refine_until(spec, p.event, p.objective, target, r.value, grid);
            worst_gap = std::max(worst_gap, ref.achieved_gap);
            if (!ref.gap_closed) c.fail("refine_until could not close the strong-duality gap");
            if (ref.achieved_gap < -1e-5 * (1.0 + std::abs(r.value)))
                c.fail("oracle exceeded the dual bound beyond solver accuracy");
        } catch (const std::exception& e) {
            c.fail(std::string("oracle refinement failed: ") + e.what());
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "50 instances; worst oracle gap %.2e, worst certificate dip %.2e", worst_gap,
                  worst_cert);
    if (c.detail.empty()) c.detail = buf;
    return c;
}

Criterion criterion4() {
    Criterion c;
    std::vector<double> cs;
    for (int i = 0; i < 25; ++i) cs.push_back(0.1 + (4.9 - 0.1) * i / 24.0);
    for (double t : {0.25, 0.5, 1.25}) {
        std::vector<std::vector<double>> curves;
        for (int m : {2, 4, 6}) {
            std::vector<double> curve;
            for (double cc : cs) {
                sos::DualBoundProblem p;
                p.moments = MomentSpec::power_moments(sos::uniform_power_moments(0.0, 5.0, m));
                p.support = SupportBox::interval(0.0, 5.0);
                p.event = EventSet::half_line_geq(t);
                p.objective = PiecewisePolynomial::indicator_above(cc);
                auto r = sos::dual_bound(p);
                if (r.status != BoundStatus::Tight) {
                    c.fail("figure-2 point did not solve");
                    curve.push_back(kInf);
                    continue;
                }
                curve.push_back(r.value);
                // validity against the true uniform conditional probability
                double truth = (5.0 - std::max(cc, t)) / (5.0 - t);
                if (truth < 0) truth = 0;
                if (r.value < truth - 1e-6) c.fail("figure-2 bound below the uniform truth");
            }
            curves.push_back(curve);
        }
        for (std::size_t k = 0; k < cs.size(); ++k) {
            if (curves[1][k] > curves[0][k] + 1e-6) c.fail("m=4 curve above m=2");
            if (curves[2][k] > curves[1][k] + 1e-6) c.fail("m=6 curve above m=4");
        }
        // oracle gap at a subsample
        for (std::size_t k = 0; k < cs.size(); k += 6) {
            AmbiguitySpec spec;
            spec.moments = MomentSpec::power_moments(sos::uniform_power_moments(0.0, 5.0, 4));
            auto grid = oracle::GridSpec::univariate(0.0, 5.0, 10000);
            grid.forced = {t, t - atom_epsilon(t), cs[k]};
            auto sol = oracle::primal_lp(spec, EventSet::half_line_geq(t),
                                         PiecewisePolynomial::indicator_above(cs[k]), grid);
            if (std::abs(sol.result.value - curves[1][k]) > 1e-3) c.fail("figure-2 oracle gap above 1e-3");
        }
    }
    if (c.detail.empty()) c.detail = "nesting, validity and oracle gaps hold on all three panels";
    return c;
}

Criterion criterion5() {
    Criterion c;
    std::vector<double> ts;
    for (int i = 0; i < 15; ++i) ts.push_back(-3.0 + 3.5 * i / 14.0);
    auto normal_cond_mean = [](double t) {
        double phi = std::exp(-t * t / 2.0) / std::sqrt(2.0 * M_PI);
        double tail = 0.5 * std::erfc(t / std::sqrt(2.0));
        return phi / tail;
    };
    for (int m : {2, 4, 6}) {
        std::vector<std::vector<double>> by_structure;
        for (int s = 0; s < 3; ++s) {
            StructuralClass sc = s == 0 ? StructuralClass::none()
                                 : s == 1 ? StructuralClass::symmetric(0.0)
                                          : StructuralClass::symmetric_unimodal(0.0);
            std::vector<double> curve;
            for (double t : ts) {
                sos::DualBoundProblem p;
                p.moments = MomentSpec::power_moments(sos::normal_power_moments(0.0, 1.0, m));
                p.event = EventSet::half_line_geq(t);
                p.objective = PiecewisePolynomial::identity();
                p.structure = sc;
                BoundResult r;
                try {
                    r = sos::dual_bound(p);
                } catch (const std::exception& e) {
                    c.fail(std::string("figure-3 solve failed: ") + e.what());
                    curve.push_back(kInf);
                    continue;
                }
                if (m == 2 && t >= 0.0) {
                    // the stated divergent branches start at t = mu; exactly at
                    // the boundary the structural suprema are finite (mu+sigma
                    // and mu+sqrt(3)sigma/2, attained), so accept either the
                    // published convention or the sharp boundary value there
                    bool boundary = t == 0.0 && s > 0;
                    double sharp = s == 1 ? 1.0 : std::sqrt(3.0) / 2.0;
                    bool ok = r.status == BoundStatus::Divergent ||
                              (boundary && r.status == BoundStatus::Tight && std::abs(r.value - sharp) <= 1e-5);
                    if (!ok) c.fail("m=2 curve not divergent beyond the mean");
                    curve.push_back(kInf);
                    continue;
                }
                if (m > 2 && r.status != BoundStatus::Tight) {
                    c.fail("m>2 point did not solve tight");
                    curve.push_back(kInf);
                    continue;
                }
                curve.push_back(r.status == BoundStatus::Tight ? r.value : kInf);
                if (r.status == BoundStatus::Tight && r.value < normal_cond_mean(t) - 1e-6)
                    c.fail("figure-3 bound below the normal conditional mean");
            }
            by_structure.push_back(curve);
        }
        for (std::size_t k = 0; k < ts.size(); ++k) {
            if (std::isfinite(by_structure[0][k]) && std::isfinite(by_structure[1][k]) &&
                by_structure[1][k] > by_structure[0][k] + 1e-6)
                c.fail("symmetric curve above unstructured");
            if (std::isfinite(by_structure[1][k]) && std::isfinite(by_structure[2][k]) &&
                by_structure[2][k] > by_structure[1][k] + 1e-6)
                c.fail("unimodal curve above symmetric");
        }
    }
    if (c.detail.empty()) c.detail = "divergence at t >= 0 for m=2; ordering and validity hold for m=4,6";
    return c;
}

Criterion criterion6() {
    Criterion c;
    double worst = 0.0;
    const double tol = 1e-6;
    for (const auto& inst : g_sdp_instances) {
        AmbiguitySpec spec;
        spec.moments = inst.prob.moments;
        spec.structure = inst.prob.structure;
        spec.support = inst.prob.support;
        auto phi = oracle::inner_solver_sos(spec, inst.prob.event, inst.prob.objective);
        double lo = inst.value - 2.0 * (1.0 + std::abs(inst.value));
        double hi = inst.value + 2.0 * (1.0 + std::abs(inst.value));
        try {
            double tau = oracle::dinkelbach_bisection(phi, lo, hi, tol);
            worst = std::max(worst, std::abs(tau - inst.value));
            if (std::abs(tau - inst.value) > 2.0 * tol) c.fail("bisection value off by more than 2 tol");
        } catch (const std::exception& e) {
            c.fail(std::string("bisection failed: ") + e.what());
        }
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "%zu instances; worst |tau - dual| = %.2e", g_sdp_instances.size(), worst);
    if (c.detail.empty()) c.detail = buf;
    return c;
}

Criterion criterion7() {
    Criterion c;
    double worst_p = 0.0, worst_v = 0.0;
    for (int i = 0; i < 50; ++i) {
        double mu = unif(0.5, 10.0), sigma = unif(0.05, 0.6) * mu;
        auto ans = cf::optimal_regret_price(mu, sigma);
        double s2 = sigma * sigma;
        double best_v = kInf, best_p = 0.0;
        const int n = 1000000;
        for (int k = 1; k < n; ++k) {
            double p = mu * k / n;
            double v = std::max(s2 / (p * (mu - p)) + mu / p, s2 / ((mu - p) * (mu - p)) + 1.0);
            if (v < best_v) {
                best_v = v;
                best_p = p;
            }
        }
        worst_p = std::max(worst_p, std::abs(ans.price - best_p));
        worst_v = std::max(worst_v, std::abs(ans.regret - best_v));
        if (std::abs(ans.price - best_p) > 1e-5 * std::max(1.0, mu)) c.fail("price off the grid optimum");
        if (std::abs(ans.regret - best_v) > 1e-6 * std::max(1.0, best_v)) c.fail("regret off the grid optimum");
    }
    // tail-probability branch boundaries: formula continuity and oracle agreement
    for (int i = 0; i < 12; ++i) {
        double mu = unif(2.0, 8.0), sigma = unif(0.2, 1.5), p = unif(0.2, 0.8) * mu;
        double z_lo = cf::tail_probability_z_lo(mu, sigma, p);
        double z_hi = cf::tail_probability_z_hi(mu, sigma, p);
        auto value_at = [&](double z) { return cf::bound_conditional_tail_probability(mu, sigma, p, z).result.value; };
        if (std::abs(value_at(z_lo - 1e-7) - value_at(z_lo + 1e-7)) > 1e-3) c.fail("discontinuity at z_lo");
        if (std::isfinite(z_hi) && std::abs(value_at(z_hi - 1e-7) - value_at(z_hi + 1e-7)) > 1e-3)
            c.fail("discontinuity at z_hi");
        std::vector<double> zs = {z_lo - 0.02, z_lo + 0.02};
        if (std::isfinite(z_hi)) {
            zs.push_back(z_hi - 0.02);
            zs.push_back(z_hi + 0.02);
        }
        for (double z : zs) {
            if (z < p) continue;
            double v = value_at(z);
            AmbiguitySpec spec;
            spec.moments = MomentSpec::mean_variance(mu, sigma);
            auto grid = oracle::GridSpec::univariate(0.0, mu + 25 * sigma, 10000);
            grid.forced = {p, p - atom_epsilon(p), z};
            auto sol = oracle::primal_lp(spec, EventSet::half_line_geq(p),
                                         PiecewisePolynomial::indicator_above(z), grid);
            if (std::abs(sol.result.value - v) > 1e-3) c.fail("branch formula disagrees with the oracle");
        }
    }
    char buf[140];
    std::snprintf(buf, sizeof buf, "50 pricing instances (worst dp %.2e, dv %.2e); boundaries continuous", worst_p,
                  worst_v);
    if (c.detail.empty()) c.detail = buf;
    return c;
}

dro::ContextualInstance figure4_instance(double rho, double z0, double q) {
    dro::ContextualInstance inst;
    inst.n_y = 1;
    inst.n_z = 1;
    Eigen::Matrix2d S;
    S << 2.25, rho * 1.5, rho * 1.5, 1.0;
    inst.spec.moments.basis = {MomentFunction::power(0), MomentFunction::monomial({1, 0}),
                               MomentFunction::monomial({0, 1})};
    inst.spec.moments.values = {1.0, 5.0, 5.0};
    inst.spec.dispersion.kind = DispersionSpec::CovarianceUB{S};
    inst.spec.support = SupportBox::real_line(2);
    if (std::isfinite(z0)) {
        Eigen::VectorXd nz(1);
        nz << 1.0;
        inst.event = EventSet::halfspace(nz, z0, Direction::Geq);
    } else {
        inst.event = EventSet::full_space(2);
    }
    inst.cost = dro::newsvendor_cost(1.0, 5.0);
    inst.decision_set = dro::DecisionSet::fixed_at(Eigen::VectorXd::Constant(1, q));
    return inst;
}

Criterion criterion8() {
    Criterion c;
    std::vector<double> qs;
    for (int i = 0; i < 50; ++i) qs.push_back(2.0 + 7.0 * i / 49.0);

    // (a) validity and (b) event monotonicity on the 50-point grid
    double min_margin = kInf;
    std::vector<double> bound_z4_rho0(qs.size());
    for (double rho : {0.0, 0.95}) {
        for (std::size_t i = 0; i < qs.size(); ++i) {
            double q = qs[i];
            auto b1 = dro::chebyshev_contextual(figure4_instance(rho, 1.0, q)).second;
            auto b4 = dro::chebyshev_contextual(figure4_instance(rho, 4.0, q)).second;
            if (b1.status != BoundStatus::Tight || b4.status != BoundStatus::Tight) {
                c.fail("figure-4 point did not solve");
                continue;
            }
            if (rho == 0.0) bound_z4_rho0[i] = b4.value;
            if (b4.value < b1.value - 1e-6) c.fail("bound with the smaller event fell below the larger event");
            for (double z0 : {1.0, 4.0}) {
                double truth = dro::ground_truth_conditional_cost({5.0, 5.0}, 1.5, 1.0, rho, 1.0, 5.0, q,
                                                                  EventSet::half_line_geq(z0));
                double bound = (z0 == 1.0 ? b1 : b4).value;
                min_margin = std::min(min_margin, bound - truth);
                if (bound < truth - 1e-6) c.fail("chebyshev bound fell below the normal ground truth");
            }
        }
    }

    // (c) full-space event with rho = 0: minimized bound equals the
    // unconditional mean-variance worst-case cost
    {
        auto inst = figure4_instance(0.0, kInf, 0.0);
        inst.decision_set = dro::DecisionSet::nonneg();
        auto [nu, res] = dro::chebyshev_contextual(inst);
        double a = 2.0, b = 9.0;
        for (int it = 0; it < 60; ++it) {
            double m1 = b - (b - a) * 0.6180339887, m2 = a + (b - a) * 0.6180339887;
            if (dro::scarf_baseline(1.0, 5.0, 5.0, 1.5, m1) < dro::scarf_baseline(1.0, 5.0, 5.0, 1.5, m2)) b = m2;
            else a = m1;
        }
        double scarf_min = dro::scarf_baseline(1.0, 5.0, 5.0, 1.5, 0.5 * (a + b));
        if (std::abs(res.value - scarf_min) > 1e-5) {
            char buf[120];
            std::snprintf(buf, sizeof buf, "full-space reduction off by %.2e", std::abs(res.value - scarf_min));
            c.fail(buf);
        }
    }

    // (d) bivariate-grid oracle gap at q = 5
    for (auto [rho, z0] : {std::pair{0.0, 1.0}, std::pair{0.95, 4.0}}) {
        auto inst = figure4_instance(rho, z0, 5.0);
        auto [nu, res] = dro::chebyshev_contextual(inst);
        Eigen::Matrix2d S;
        S << 2.25, rho * 1.5, rho * 1.5, 1.0;
        Eigen::VectorXd qv(1);
        qv << 5.0;
        auto cost = [&](const Eigen::Vector2d& x) { return inst.cost(qv, Eigen::VectorXd(x)); };
        auto grid = oracle::tensor_grid({5.0 - 13.5, 5.0 + 13.5, 1025}, {5.0 - 9.0, 5.0 + 9.0, 1025});
        auto [hc, hbar] = inst.normalized_halfspace();
        try {
            auto sol = oracle::primal_lp_chebyshev_2d({5.0, 5.0}, S, Eigen::Vector2d(hc), hbar, cost, grid);
            double gap = res.value - sol.result.value;
            if (sol.result.value > res.value + 1e-6) c.fail("bivariate oracle exceeded the conic bound");
            if (gap > 1e-2) {
                char buf[120];
                std::snprintf(buf, sizeof buf, "bivariate oracle gap %.2e above 1e-2 (rho=%g z0=%g)", gap, rho, z0);
                c.fail(buf);
            }
        } catch (const std::exception& e) {
            c.fail(std::string("bivariate oracle failed: ") + e.what());
        }
    }

    // (e) the unconditional baseline outperforms the conditional bound for the
    // small event with independent demand
    {
        std::size_t best = 0;
        for (std::size_t i = 1; i < qs.size(); ++i)
            if (bound_z4_rho0[i] < bound_z4_rho0[best]) best = i;
        double scarf = dro::scarf_baseline(1.0, 5.0, 5.0, 1.5, qs[best]);
        if (scarf > bound_z4_rho0[best] + 1e-9) c.fail("baseline unexpectedly above the conditional bound");
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "validity margin %.3e at the tightest point; all orderings hold", min_margin);
    if (c.detail.empty()) c.detail = buf;
    return c;
}

Criterion criterion9() {
    Criterion c;
    if (g_stats.max_atoms == 0) {
        c.fail("no oracle solutions recorded");
        return c;
    }
    // atom counts were asserted per solve inside criterion 1; summarize here
    if (g_max_slackness > 1e-6) {
        char buf[120];
        std::snprintf(buf, sizeof buf, "complementary slackness residual %.2e above 1e-6", g_max_slackness);
        c.fail(buf);
    }
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "max vertex support %d atoms; %d of %d solves already fit m+1 generators; worst atom residual %.2e",
                  g_stats.max_atoms, g_stats.basic_count_le_m1, g_stats.total, g_max_slackness);
    if (c.detail.empty()) c.detail = buf;
    return c;
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        Criterion (*fn)();
    };
    std::vector<Entry> entries = {
        {"criterion 1: closed forms vs discretized primal oracle", criterion1},
        {"criterion 2: convex-dispersion reductions", criterion2},
        {"criterion 3: sdp strong duality and certificates", criterion3},
        {"criterion 4: uniform tail-probability curves", criterion4},
        {"criterion 5: normal-moment curves with structure", criterion5},
        {"criterion 6: parametric bisection equivalence", criterion6},
        {"criterion 7: regret pricing and branch boundaries", criterion7},
        {"criterion 8: contextual newsvendor panels", criterion8},
        {"criterion 9: extremal support structure", criterion9},
    };
    int failures = 0;
    for (const auto& e : entries) {
        auto start = std::chrono::steady_clock::now();
        Criterion c = e.fn();
        double secs =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count() /
            1000.0;
        std::printf("[%s] %s (%.1fs) %s\n", c.pass ? "PASS" : "FAIL", e.name, secs, c.detail.c_str());
        std::fflush(stdout);
        if (!c.pass) ++failures;
    }
    if (failures == 0) std::printf("all acceptance criteria passed\n");
    else std::printf("%d acceptance criteria FAILED\n", failures);
    return failures;
}
