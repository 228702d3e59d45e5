#pragma once

// JSON bindings for the domain types (the CLI's instance/result format).
// Unbounded interval ends serialize as the strings "inf" / "-inf"; every
// variant type carries a "kind" discriminator. See docs/schemas.md.

#include <string>
#include <vector>

#include <json.hpp>

#include "condbound/dro.hpp"
#include "condbound/sos.hpp"
#include "condbound/types.hpp"

namespace condbound {

using nlohmann::json;

namespace detail_json {

inline json num(double v) {
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    return v;
}

inline double as_num(const json& j) {
    if (j.is_string()) {
        const std::string& s = j.get_ref<const std::string&>();
        if (s == "inf" || s == "+inf") return kInf;
        if (s == "-inf") return -kInf;
        throw std::invalid_argument("json: expected a number or \"inf\"/\"-inf\", got \"" + s + "\"");
    }
    return j.get<double>();
}

inline json vec(const Eigen::VectorXd& v) {
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

inline Eigen::VectorXd as_vec(const json& j) {
    Eigen::VectorXd v(static_cast<int>(j.size()));
    for (int i = 0; i < v.size(); ++i) v[i] = as_num(j[static_cast<std::size_t>(i)]);
    return v;
}

inline json mat(const Eigen::MatrixXd& m) {
    json a = json::array();
    for (int i = 0; i < m.rows(); ++i) a.push_back(vec(m.row(i).transpose()));
    return a;
}

inline Eigen::MatrixXd as_mat(const json& j) {
    int rows = static_cast<int>(j.size());
    int cols = rows > 0 ? static_cast<int>(j[0].size()) : 0;
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) m(i, k) = as_num(j[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
    return m;
}

}  // namespace detail_json

// --- polynomials -----------------------------------------------------------

inline void to_json(json& j, const Poly& p) { j = p.coeffs(); }
inline void from_json(const json& j, Poly& p) { p = Poly(j.get<std::vector<double>>()); }

inline void to_json(json& j, const PiecewisePolynomial& f) {
    j = json{{"breakpoints", f.breakpoints},
             {"pieces", f.pieces},
             {"domain_lo", detail_json::num(f.domain_lo)},
             {"domain_hi", detail_json::num(f.domain_hi)}};
}
inline void from_json(const json& j, PiecewisePolynomial& f) {
    f = PiecewisePolynomial(j.at("breakpoints").get<std::vector<double>>(), j.at("pieces").get<std::vector<Poly>>());
    if (j.contains("domain_lo")) f.domain_lo = detail_json::as_num(j.at("domain_lo"));
    if (j.contains("domain_hi")) f.domain_hi = detail_json::as_num(j.at("domain_hi"));
}

// --- events and structure ---------------------------------------------------

inline void to_json(json& j, const EventSet& e) {
    j["dimension"] = e.dimension;
    if (auto* h = std::get_if<EventSet::HalfLine>(&e.kind)) {
        j["kind"] = "half_line";
        j["threshold"] = h->threshold;
        j["direction"] = h->dir == Direction::Geq ? "geq" : "leq";
    } else if (auto* iv = std::get_if<EventSet::Interval>(&e.kind)) {
        j["kind"] = "interval";
        j["lo"] = iv->lo;
        j["hi"] = iv->hi;
    } else if (auto* hs = std::get_if<EventSet::Halfspace>(&e.kind)) {
        j["kind"] = "halfspace";
        j["normal"] = detail_json::vec(hs->normal);
        j["offset"] = hs->offset;
        j["direction"] = hs->dir == Direction::Geq ? "geq" : "leq";
    } else {
        j["kind"] = "full_space";
    }
}
inline void from_json(const json& j, EventSet& e) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "half_line") {
        double t = detail_json::as_num(j.at("threshold"));
        e = j.value("direction", "geq") == std::string("geq") ? EventSet::half_line_geq(t)
                                                              : EventSet::half_line_leq(t);
    } else if (kind == "interval") {
        e = EventSet::interval(detail_json::as_num(j.at("lo")), detail_json::as_num(j.at("hi")));
    } else if (kind == "halfspace") {
        e = EventSet::halfspace(detail_json::as_vec(j.at("normal")), detail_json::as_num(j.at("offset")),
                                j.value("direction", "leq") == std::string("geq") ? Direction::Geq : Direction::Leq);
    } else if (kind == "full_space") {
        e = EventSet::full_space(j.value("dimension", 1));
    } else {
        throw std::invalid_argument("json: unknown event kind " + kind);
    }
}

inline void to_json(json& j, const StructuralClass& s) {
    switch (s.kind) {
        case StructuralClass::Kind::None: j = json{{"kind", "none"}}; break;
        case StructuralClass::Kind::Symmetric: j = json{{"kind", "symmetric"}, {"center", s.center}}; break;
        case StructuralClass::Kind::SymmetricUnimodal:
            j = json{{"kind", "symmetric_unimodal"}, {"center", s.center}};
            break;
    }
}
inline void from_json(const json& j, StructuralClass& s) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "none") s = StructuralClass::none();
    else if (kind == "symmetric") s = StructuralClass::symmetric(detail_json::as_num(j.at("center")));
    else if (kind == "symmetric_unimodal") s = StructuralClass::symmetric_unimodal(detail_json::as_num(j.at("center")));
    else throw std::invalid_argument("json: unknown structural class " + kind);
}

// --- moment functions and specs ----------------------------------------------

inline void to_json(json& j, const MomentFunction& h) {
    if (auto* p = std::get_if<MomentFunction::Power>(&h.kind)) {
        j = json{{"kind", "power"}, {"exponent", p->exponent}};
    } else if (auto* f = std::get_if<MomentFunction::Piecewise>(&h.kind)) {
        j = json{{"kind", "piecewise"}, {"f", f->f}};
    } else if (auto* m = std::get_if<MomentFunction::Monomial>(&h.kind)) {
        j = json{{"kind", "monomial"}, {"exponents", m->exponents}};
    } else {
        auto& aa = std::get<MomentFunction::AbsAffine>(h.kind);
        j = json{{"kind", "abs_affine"}, {"a", detail_json::vec(aa.a)}, {"b", aa.b}};
    }
}
inline void from_json(const json& j, MomentFunction& h) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "power") h = MomentFunction::power(j.at("exponent").get<int>());
    else if (kind == "piecewise") h = MomentFunction::piecewise(j.at("f").get<PiecewisePolynomial>());
    else if (kind == "monomial") h = MomentFunction::monomial(j.at("exponents").get<std::vector<int>>());
    else if (kind == "abs_affine") h = MomentFunction::abs_affine(detail_json::as_vec(j.at("a")), detail_json::as_num(j.at("b")));
    else throw std::invalid_argument("json: unknown moment function kind " + kind);
}

inline void to_json(json& j, const MomentSpec& m) {
    j = json{{"basis", m.basis}, {"values", m.values}};
}
inline void from_json(const json& j, MomentSpec& m) {
    m.basis = j.at("basis").get<std::vector<MomentFunction>>();
    m.values = j.at("values").get<std::vector<double>>();
    m.check_well_formed();
}

// --- dispersion, support, ambiguity ------------------------------------------

inline void to_json(json& j, const DispersionSpec& d) {
    using DS = DispersionSpec;
    if (std::holds_alternative<DS::None>(d.kind)) {
        j = json{{"kind", "none"}};
    } else if (auto* v = std::get_if<DS::Variance>(&d.kind)) {
        j = json{{"kind", "variance"}, {"sigma", v->sigma}};
    } else if (auto* m = std::get_if<DS::MAD>(&d.kind)) {
        j = json{{"kind", "mad"}, {"d", m->d}, {"support_lo", m->support_lo}, {"support_hi", m->support_hi}};
    } else if (auto* c = std::get_if<DS::ConvexDispersion>(&d.kind)) {
        j = json{{"kind", "convex_dispersion"}, {"d", c->d}, {"level", c->level}};
    } else if (auto* cov = std::get_if<DS::CovarianceUB>(&d.kind)) {
        j = json{{"kind", "covariance_ub"}, {"sigma_matrix", detail_json::mat(cov->Sigma)}};
    } else {
        auto& cm = std::get<DS::ComponentwiseMAD>(d.kind);
        j = json{{"kind", "componentwise_mad"}, {"bounds", detail_json::mat(cm.bounds)},
                 {"center", detail_json::vec(cm.center)}};
    }
}
inline void from_json(const json& j, DispersionSpec& d) {
    std::string kind = j.at("kind").get<std::string>();
    using DS = DispersionSpec;
    if (kind == "none") d.kind = DS::None{};
    else if (kind == "variance") d.kind = DS::Variance{detail_json::as_num(j.at("sigma"))};
    else if (kind == "mad")
        d.kind = DS::MAD{detail_json::as_num(j.at("d")), detail_json::as_num(j.at("support_lo")),
                         detail_json::as_num(j.at("support_hi"))};
    else if (kind == "convex_dispersion")
        d.kind = DS::ConvexDispersion{j.at("d").get<PiecewisePolynomial>(), detail_json::as_num(j.at("level"))};
    else if (kind == "covariance_ub") d.kind = DS::CovarianceUB{detail_json::as_mat(j.at("sigma_matrix"))};
    else if (kind == "componentwise_mad")
        d.kind = DS::ComponentwiseMAD{detail_json::as_mat(j.at("bounds")), detail_json::as_vec(j.at("center"))};
    else throw std::invalid_argument("json: unknown dispersion kind " + kind);
}

inline void to_json(json& j, const SupportBox& s) {
    j = json{{"lo", json::array()}, {"hi", json::array()}};
    for (int k = 0; k < s.dim(); ++k) {
        j["lo"].push_back(detail_json::num(s.lo[k]));
        j["hi"].push_back(detail_json::num(s.hi[k]));
    }
}
inline void from_json(const json& j, SupportBox& s) {
    s.lo = detail_json::as_vec(j.at("lo"));
    s.hi = detail_json::as_vec(j.at("hi"));
}

inline void to_json(json& j, const AmbiguitySpec& a) {
    j = json{{"moments", a.moments}, {"dispersion", a.dispersion}, {"structure", a.structure}, {"support", a.support}};
}
inline void from_json(const json& j, AmbiguitySpec& a) {
    a.moments = j.at("moments").get<MomentSpec>();
    if (j.contains("dispersion")) a.dispersion = j.at("dispersion").get<DispersionSpec>();
    if (j.contains("structure")) a.structure = j.at("structure").get<StructuralClass>();
    if (j.contains("support")) a.support = j.at("support").get<SupportBox>();
}

// --- distributions and results -----------------------------------------------

inline void to_json(json& j, const ExplicitDistribution& d) {
    j = json::array();
    for (const auto& wc : d.components) {
        json c;
        c["weight"] = wc.weight;
        if (auto* dd = std::get_if<ExplicitDistribution::Dirac>(&wc.component)) {
            c["kind"] = "dirac";
            c["point"] = dd->point;
        } else if (auto* u = std::get_if<ExplicitDistribution::UniformInterval>(&wc.component)) {
            c["kind"] = "uniform";
            c["lo"] = u->lo;
            c["hi"] = u->hi;
        } else {
            auto& s = std::get<ExplicitDistribution::SymmetricDiracPair>(wc.component);
            c["kind"] = "symmetric_pair";
            c["center"] = s.center;
            c["offset"] = s.offset;
        }
        j.push_back(c);
    }
}
inline void from_json(const json& j, ExplicitDistribution& d) {
    d.components.clear();
    for (const auto& c : j) {
        double w = detail_json::as_num(c.at("weight"));
        std::string kind = c.at("kind").get<std::string>();
        if (kind == "dirac") d.add(w, ExplicitDistribution::Dirac{detail_json::as_num(c.at("point"))});
        else if (kind == "uniform")
            d.add(w, ExplicitDistribution::UniformInterval{detail_json::as_num(c.at("lo")),
                                                           detail_json::as_num(c.at("hi"))});
        else if (kind == "symmetric_pair")
            d.add(w, ExplicitDistribution::SymmetricDiracPair{detail_json::as_num(c.at("center")),
                                                              detail_json::as_num(c.at("offset"))});
        else throw std::invalid_argument("json: unknown component kind " + kind);
    }
}

inline void to_json(json& j, const BoundResult& r) {
    j["status"] = to_string(r.status);
    // divergence stays an explicit status, never a sentinel float
    if (r.status != BoundStatus::Divergent && r.status != BoundStatus::Infeasible) j["value"] = r.value;
    if (r.robust_value) j["robust_value"] = *r.robust_value;
    if (r.dual_certificate) j["dual_certificate"] = *r.dual_certificate;
    if (r.extremal) j["extremal"] = *r.extremal;
    if (r.gap) j["gap"] = *r.gap;
}
inline void from_json(const json& j, BoundResult& r) {
    std::string status = j.at("status").get<std::string>();
    if (status == "tight") r.status = BoundStatus::Tight;
    else if (status == "divergent") r.status = BoundStatus::Divergent;
    else if (status == "uninformative") r.status = BoundStatus::Uninformative;
    else if (status == "infeasible") r.status = BoundStatus::Infeasible;
    else throw std::invalid_argument("json: unknown bound status " + status);
    r.value = r.status == BoundStatus::Divergent ? kInf : std::numeric_limits<double>::quiet_NaN();
    if (j.contains("value")) r.value = detail_json::as_num(j.at("value"));
    if (j.contains("robust_value")) r.robust_value = detail_json::as_num(j.at("robust_value"));
    if (j.contains("dual_certificate")) r.dual_certificate = j.at("dual_certificate").get<std::vector<double>>();
    if (j.contains("extremal")) r.extremal = j.at("extremal").get<ExplicitDistribution>();
    if (j.contains("gap")) r.gap = detail_json::as_num(j.at("gap"));
}

// --- cost and contextual instances --------------------------------------------

inline void to_json(json& j, const PiecewiseAffineMax& f) {
    j["decision_dim"] = f.decision_dim;
    j["uncertainty_dim"] = f.uncertainty_dim;
    j["terms"] = json::array();
    for (const auto& t : f.terms)
        j["terms"].push_back(json{{"slope_nu", detail_json::mat(t.slope_nu)},
                                  {"slope_0", detail_json::vec(t.slope_0)},
                                  {"intercept_nu", detail_json::vec(t.intercept_nu)},
                                  {"intercept_0", t.intercept_0}});
}
inline void from_json(const json& j, PiecewiseAffineMax& f) {
    f.decision_dim = j.at("decision_dim").get<int>();
    f.uncertainty_dim = j.at("uncertainty_dim").get<int>();
    f.terms.clear();
    for (const auto& t : j.at("terms")) {
        PiecewiseAffineMax::Term term;
        term.slope_nu = detail_json::as_mat(t.at("slope_nu"));
        term.slope_0 = detail_json::as_vec(t.at("slope_0"));
        term.intercept_nu = detail_json::as_vec(t.at("intercept_nu"));
        term.intercept_0 = detail_json::as_num(t.at("intercept_0"));
        f.terms.push_back(std::move(term));
    }
    f.check_well_formed();
}

}  // namespace condbound

namespace condbound::sos {

inline void to_json(json& j, const DualBoundProblem& p) {
    j = json{{"moments", p.moments}, {"event", p.event}, {"objective", p.objective},
             {"structure", p.structure}, {"support", p.support}};
}
inline void from_json(const json& j, DualBoundProblem& p) {
    p.moments = j.at("moments").get<MomentSpec>();
    p.event = j.at("event").get<EventSet>();
    p.objective = j.at("objective").get<PiecewisePolynomial>();
    if (j.contains("structure")) p.structure = j.at("structure").get<StructuralClass>();
    if (j.contains("support")) p.support = j.at("support").get<SupportBox>();
}

}  // namespace condbound::sos

namespace condbound::dro {

inline void to_json(json& j, const DecisionSet& d) {
    switch (d.kind) {
        case DecisionSet::Kind::Fixed: j = json{{"kind", "fixed"}, {"value", detail_json::vec(d.fixed)}}; break;
        case DecisionSet::Kind::Nonneg: j = json{{"kind", "nonneg"}}; break;
        case DecisionSet::Kind::Box:
            j = json{{"kind", "box"}, {"lo", detail_json::vec(d.lo)}, {"hi", detail_json::vec(d.hi)}};
            break;
    }
}
inline void from_json(const json& j, DecisionSet& d) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "fixed") d = DecisionSet::fixed_at(detail_json::as_vec(j.at("value")));
    else if (kind == "nonneg") d = DecisionSet::nonneg();
    else if (kind == "box") d = DecisionSet::box(detail_json::as_vec(j.at("lo")), detail_json::as_vec(j.at("hi")));
    else throw std::invalid_argument("json: unknown decision set kind " + kind);
}

inline void to_json(json& j, const ContextualInstance& i) {
    j = json{{"spec", i.spec},   {"event", i.event}, {"cost", i.cost},
             {"decision_set", i.decision_set}, {"n_y", i.n_y},     {"n_z", i.n_z}};
}
inline void from_json(const json& j, ContextualInstance& i) {
    i.spec = j.at("spec").get<AmbiguitySpec>();
    i.event = j.at("event").get<EventSet>();
    i.cost = j.at("cost").get<PiecewiseAffineMax>();
    i.decision_set = j.at("decision_set").get<DecisionSet>();
    i.n_y = j.at("n_y").get<int>();
    i.n_z = j.at("n_z").get<int>();
}

}  // namespace condbound::dro
