#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "condbound/model.hpp"

using namespace condbound;
using Catch::Matchers::WithinAbs;

TEST_CASE("conditional expectation point masses") {
    auto g = PiecewisePolynomial::identity();
    REQUIRE_THAT(conditional_expectation(ExplicitDistribution::dirac(3.0), g, EventSet::half_line_geq(0.0)),
                 WithinAbs(3.0, 1e-15));
    auto two = ExplicitDistribution::two_point(0.0, 0.5, 2.0, 0.5);
    REQUIRE_THAT(conditional_expectation(two, g, EventSet::half_line_geq(1.0)), WithinAbs(2.0, 1e-15));
}

TEST_CASE("conditional expectation of uniform component") {
    auto g = PiecewisePolynomial::identity();
    auto u = ExplicitDistribution::uniform(0.0, 5.0);
    REQUIRE_THAT(conditional_expectation(u, g, EventSet::half_line_geq(1.25)), WithinAbs(3.125, 1e-12));
    REQUIRE_THAT(conditional_expectation(u, g, EventSet::interval(1.0, 2.0)), WithinAbs(1.5, 1e-12));
    REQUIRE_THAT(conditional_expectation(u, g, EventSet::full_space()), WithinAbs(2.5, 1e-12));
}

TEST_CASE("conditional expectation error on zero event mass") {
    auto g = PiecewisePolynomial::identity();
    REQUIRE_THROWS_AS(conditional_expectation(ExplicitDistribution::dirac(0.0), g, EventSet::half_line_geq(1.0)),
                      ZeroEventMass);
}

TEST_CASE("conditional expectation properties") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        ExplicitDistribution d;
        int k = 2 + static_cast<int>(rng() % 3);
        std::vector<double> w(static_cast<std::size_t>(k));
        double total = 0.0;
        for (auto& wi : w) total += wi = 0.1 + std::abs(unif(rng));
        for (int i = 0; i < k; ++i) {
            double wi = w[static_cast<std::size_t>(i)] / total;
            if (rng() % 2 == 0) d.add(wi, ExplicitDistribution::Dirac{unif(rng)});
            else {
                double a = unif(rng);
                d.add(wi, ExplicitDistribution::UniformInterval{a, a + 0.5 + std::abs(unif(rng))});
            }
        }
        d.check_well_formed();
        auto g = PiecewisePolynomial::stop_loss(unif(rng));

        // full-space conditioning equals the unconditional expectation
        double uncond = 0.0;
        for (auto& wc : d.components)
            uncond += wc.weight * detail::component_event_integral(wc.component, g, EventSet::full_space());
        REQUIRE_THAT(conditional_expectation(d, g, EventSet::full_space()), WithinAbs(uncond, 1e-10));

        // invariance under common rescaling of the weights before renormalization
        ExplicitDistribution scaled = d;
        for (auto& wc : scaled.components) wc.weight *= 7.25;
        EventSet ev = EventSet::half_line_geq(-1.0);
        if (event_mass(d, ev) > 1e-9) {
            REQUIRE_THAT(conditional_expectation(scaled, g, ev),
                         WithinAbs(conditional_expectation(d, g, ev), 1e-10));
            // constants condition to themselves
            REQUIRE_THAT(conditional_expectation(d, PiecewisePolynomial::constant(4.2), ev), WithinAbs(4.2, 1e-10));
        }
    }
}

TEST_CASE("power moments of explicit distributions") {
    auto u = ExplicitDistribution::uniform(0.0, 5.0);
    auto q = power_moments_of(u, 2);
    REQUIRE_THAT(q[1], WithinAbs(2.5, 1e-12));
    REQUIRE_THAT(q[2], WithinAbs(25.0 / 3.0, 1e-12));

    ExplicitDistribution pair;
    pair.add(1.0, ExplicitDistribution::SymmetricDiracPair{1.0, 2.0});
    auto qp = power_moments_of(pair, 2);
    REQUIRE_THAT(qp[1], WithinAbs(1.0, 1e-12));
    REQUIRE_THAT(qp[2], WithinAbs(0.5 * (9.0 + 1.0), 1e-12));
}

TEST_CASE("validate accepts normal-like moments on the real line") {
    AmbiguitySpec spec;
    spec.moments = MomentSpec::mean_variance(0.0, 1.0);
    spec.dispersion.kind = DispersionSpec::Variance{1.0};
    auto rep = validate(spec);
    REQUIRE(rep.passed);
}

TEST_CASE("validate checks the maximal mad on the support") {
    AmbiguitySpec ok;
    ok.moments = MomentSpec::mean_mad(5.0, 2.0);
    ok.dispersion.kind = DispersionSpec::MAD{2.0, 0.0, 10.0};
    ok.support = SupportBox::interval(0.0, 10.0);
    REQUIRE(validate(ok).passed);  // 0 < 2 < 2*5*5/10 = 5

    AmbiguitySpec bad = ok;
    bad.moments = MomentSpec::mean_mad(5.0, 6.0);
    bad.dispersion.kind = DispersionSpec::MAD{6.0, 0.0, 10.0};
    auto rep = validate(bad);
    REQUIRE_FALSE(rep.passed);
    bool found = false;
    for (auto& v : rep.violations) found = found || v.find("maximal MAD") != std::string::npos;
    REQUIRE(found);
}

TEST_CASE("validate flags degenerate hankel and off-support means") {
    AmbiguitySpec spec;
    spec.moments = MomentSpec::power_moments({1.0, 0.0, 0.0});  // zero variance
    spec.dispersion.kind = DispersionSpec::Variance{0.0};
    auto rep = validate(spec);
    REQUIRE_FALSE(rep.passed);

    AmbiguitySpec off;
    off.moments = MomentSpec::mean_variance(3.0, 1.0);
    off.dispersion.kind = DispersionSpec::Variance{1.0};
    off.support = SupportBox::interval(0.0, 2.0);
    REQUIRE_FALSE(validate(off).passed);
}

TEST_CASE("validate accepts specs built from explicit distributions") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unif(-5.0, 5.0);
    for (int trial = 0; trial < 25; ++trial) {
        ExplicitDistribution d;
        d.add(0.4, ExplicitDistribution::Dirac{unif(rng)});
        d.add(0.6, ExplicitDistribution::UniformInterval{-6.0 + trial * 0.1, 6.0 + trial * 0.2});
        auto q = power_moments_of(d, 2);
        double var = q[2] - q[1] * q[1];
        AmbiguitySpec spec;
        spec.moments = MomentSpec::power_moments(q);
        spec.dispersion.kind = DispersionSpec::Variance{std::sqrt(var)};
        REQUIRE(validate(spec).passed);
    }
}

TEST_CASE("restrict_to_event and cumulative antiderivative") {
    auto g = PiecewisePolynomial::identity();
    auto ge = restrict_to_event(g, EventSet::interval(1.0, 3.0));
    REQUIRE_THAT(ge(0.5), WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(ge(2.0), WithinAbs(2.0, 1e-15));
    REQUIRE_THAT(ge(3.5), WithinAbs(0.0, 1e-15));

    auto F = cumulative_antiderivative(ge);
    // integral of x over [1, x] within the window
    REQUIRE_THAT(F(3.0) - F(1.0), WithinAbs(4.0, 1e-12));
    REQUIRE_THAT(F(5.0) - F(0.0), WithinAbs(4.0, 1e-12));  // constant outside
    // continuity at the breakpoints
    REQUIRE_THAT(F(1.0 + 1e-9) - F(1.0 - 1e-9), WithinAbs(0.0, 1e-7));
    REQUIRE_THAT(F(3.0 + 1e-9) - F(3.0 - 1e-9), WithinAbs(0.0, 1e-7));
}
