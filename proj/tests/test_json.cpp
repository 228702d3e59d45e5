#include <catch2/catch_amalgamated.hpp>

#include "condbound/json_io.hpp"

using namespace condbound;
using Catch::Matchers::WithinAbs;

TEST_CASE("json round-trips for core types") {
    // event sets
    for (const EventSet& e :
         {EventSet::half_line_geq(-1.5), EventSet::interval(0.0, 2.0), EventSet::full_space(2)}) {
        json j = e;
        EventSet back = j.get<EventSet>();
        REQUIRE(json(back) == j);
    }
    Eigen::VectorXd nz(2);
    nz << 0.0, -1.0;
    json jh = EventSet::halfspace(nz, -1.0);
    REQUIRE(jh.at("kind") == "halfspace");
    REQUIRE(json(jh.get<EventSet>()) == jh);

    // piecewise polynomial with unbounded domain ends
    auto g = PiecewisePolynomial::stop_loss(1.25);
    json jg = g;
    REQUIRE(jg.at("domain_lo") == "-inf");
    auto g2 = jg.get<PiecewisePolynomial>();
    REQUIRE_THAT(g2(3.0), WithinAbs(g(3.0), 0.0));

    // moment specs
    MomentSpec ms = MomentSpec::mean_mad(1.0, 0.5);
    json jm = ms;
    auto ms2 = jm.get<MomentSpec>();
    REQUIRE(ms2.values == ms.values);
    REQUIRE_THAT(ms2.basis[2](3.0), WithinAbs(2.0, 0.0));

    // explicit distributions
    ExplicitDistribution d;
    d.add(0.25, ExplicitDistribution::Dirac{1.0});
    d.add(0.5, ExplicitDistribution::UniformInterval{-1.0, 1.0});
    d.add(0.25, ExplicitDistribution::SymmetricDiracPair{0.0, 2.0});
    json jd = d;
    auto d2 = jd.get<ExplicitDistribution>();
    REQUIRE(json(d2) == jd);

    // bound results: divergence is a status, not a sentinel float
    BoundResult r = BoundResult::divergent();
    json jr = r;
    REQUIRE(jr.at("status") == "divergent");
    REQUIRE_FALSE(jr.contains("value"));
    auto r2 = jr.get<BoundResult>();
    REQUIRE(std::isinf(r2.value));
}

TEST_CASE("json round-trips for solver inputs") {
    sos::DualBoundProblem p;
    p.moments = MomentSpec::mean_variance(0.0, 1.0);
    p.event = EventSet::half_line_geq(-1.0);
    p.objective = PiecewisePolynomial::identity();
    p.structure = StructuralClass::symmetric(0.0);
    json jp = p;
    auto p2 = jp.get<sos::DualBoundProblem>();
    REQUIRE(json(p2) == jp);

    dro::ContextualInstance inst;
    inst.n_y = 1;
    inst.n_z = 1;
    Eigen::Matrix2d S;
    S << 2.25, 0.0, 0.0, 1.0;
    inst.spec.moments.basis = {MomentFunction::power(0), MomentFunction::monomial({1, 0}),
                               MomentFunction::monomial({0, 1})};
    inst.spec.moments.values = {1.0, 5.0, 5.0};
    inst.spec.dispersion.kind = DispersionSpec::CovarianceUB{S};
    inst.spec.support = SupportBox::real_line(2);
    Eigen::VectorXd n1(1);
    n1 << 1.0;
    inst.event = EventSet::halfspace(n1, 1.0, Direction::Geq);
    inst.cost = dro::newsvendor_cost(1.0, 5.0);
    inst.decision_set = dro::DecisionSet::fixed_at(Eigen::VectorXd::Constant(1, 5.0));
    json ji = inst;
    auto inst2 = ji.get<dro::ContextualInstance>();
    REQUIRE(json(inst2) == ji);
}

TEST_CASE("json rejects malformed inputs") {
    REQUIRE_THROWS(json::parse(R"({"kind":"slab"})").get<EventSet>());
    REQUIRE_THROWS(json::parse(R"({"breakpoints":[1.0],"pieces":[[0.0]]})").get<PiecewisePolynomial>());
    REQUIRE_THROWS(json::parse(R"({"basis":[{"kind":"power","exponent":0}],"values":[2.0]})").get<MomentSpec>());
}
