#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "condbound/poly.hpp"
#include "condbound/tolerances.hpp"

namespace condbound {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ZeroEventMass : Error { using Error::Error; };
struct InvalidDispersion : Error { using Error::Error; };
struct SupportViolation : Error { using Error::Error; };
struct RootNotBracketed : Error { using Error::Error; };
struct QuarticRootNotFound : Error { using Error::Error; };
struct PreconditionViolated : Error { using Error::Error; };
struct SolverFailure : Error { using Error::Error; };
struct DegreeMismatch : Error { using Error::Error; };
struct EmptyInterval : Error { using Error::Error; };
struct UnsupportedEvent : Error { using Error::Error; };
struct InfeasibleDiscretization : Error { using Error::Error; };
struct EventMassVanishes : Error { using Error::Error; };
struct BracketInvalid : Error { using Error::Error; };
struct TooManyAtoms : Error { using Error::Error; };
struct QuadratureFailure : Error { using Error::Error; };

// ---------------------------------------------------------------------------
// EventSet: the conditioning event.
// ---------------------------------------------------------------------------

enum class Direction { Geq, Leq };

struct EventSet {
    struct HalfLine {
        double threshold = 0.0;
        Direction dir = Direction::Geq;
    };
    struct Interval {
        double lo = 0.0, hi = 0.0;
    };
    struct Halfspace {
        Eigen::VectorXd normal;  // nonzero
        double offset = 0.0;
        Direction dir = Direction::Leq;  // Leq: normal'x <= offset
    };
    struct FullSpace {};

    std::variant<HalfLine, Interval, Halfspace, FullSpace> kind = FullSpace{};
    int dimension = 1;

    static EventSet half_line_geq(double t) { return {HalfLine{t, Direction::Geq}, 1}; }
    static EventSet half_line_leq(double t) { return {HalfLine{t, Direction::Leq}, 1}; }
    static EventSet interval(double lo, double hi) {
        if (!(lo < hi)) throw std::invalid_argument("EventSet::interval: requires lo < hi");
        return {Interval{lo, hi}, 1};
    }
    static EventSet halfspace(Eigen::VectorXd normal, double offset, Direction dir = Direction::Leq) {
        if (normal.size() == 0 || normal.lpNorm<Eigen::Infinity>() == 0.0)
            throw std::invalid_argument("EventSet::halfspace: normal must be nonzero");
        int dim = static_cast<int>(normal.size());
        return {Halfspace{std::move(normal), offset, dir}, dim};
    }
    static EventSet full_space(int dim = 1) { return {FullSpace{}, dim}; }

    bool is_full_space() const { return std::holds_alternative<FullSpace>(kind); }

    bool contains(double x) const {
        if (auto* h = std::get_if<HalfLine>(&kind))
            return h->dir == Direction::Geq ? x >= h->threshold : x <= h->threshold;
        if (auto* iv = std::get_if<Interval>(&kind)) return x >= iv->lo && x <= iv->hi;
        if (std::holds_alternative<FullSpace>(kind)) return true;
        throw UnsupportedEvent("EventSet::contains(double): halfspace event needs a vector point");
    }

    bool contains(const Eigen::VectorXd& x) const {
        if (auto* h = std::get_if<Halfspace>(&kind)) {
            if (h->normal.size() != x.size())
                throw std::invalid_argument("EventSet::contains: point dimension does not match the halfspace");
            double v = h->normal.dot(x);
            return h->dir == Direction::Leq ? v <= h->offset : v >= h->offset;
        }
        if (std::holds_alternative<FullSpace>(kind)) return true;
        if (x.size() == 1) return contains(x[0]);
        throw UnsupportedEvent("EventSet::contains(vector): event kind inconsistent with dimension");
    }

    /// Intersection of the event with [a, b], for univariate events.
    /// Returns empty optional when the intersection has zero length and no point.
    std::optional<std::pair<double, double>> clip(double a, double b) const {
        double lo = a, hi = b;
        if (auto* h = std::get_if<HalfLine>(&kind)) {
            if (h->dir == Direction::Geq) lo = std::max(lo, h->threshold);
            else hi = std::min(hi, h->threshold);
        } else if (auto* iv = std::get_if<Interval>(&kind)) {
            lo = std::max(lo, iv->lo);
            hi = std::min(hi, iv->hi);
        } else if (!std::holds_alternative<FullSpace>(kind)) {
            throw UnsupportedEvent("EventSet::clip: univariate events only");
        }
        if (lo > hi) return std::nullopt;
        return std::make_pair(lo, hi);
    }

    /// Boundary points of the event (univariate kinds).
    std::vector<double> boundaries() const {
        if (auto* h = std::get_if<HalfLine>(&kind)) return {h->threshold};
        if (auto* iv = std::get_if<Interval>(&kind)) return {iv->lo, iv->hi};
        return {};
    }
};

// ---------------------------------------------------------------------------
// StructuralClass
// ---------------------------------------------------------------------------

struct StructuralClass {
    enum class Kind { None, Symmetric, SymmetricUnimodal };
    Kind kind = Kind::None;
    double center = 0.0;  // symmetry center / mode

    static StructuralClass none() { return {Kind::None, 0.0}; }
    static StructuralClass symmetric(double mu) { return {Kind::Symmetric, mu}; }
    static StructuralClass symmetric_unimodal(double mu) { return {Kind::SymmetricUnimodal, mu}; }
    bool is_none() const { return kind == Kind::None; }
};

// ---------------------------------------------------------------------------
// Moment functions and MomentSpec
// ---------------------------------------------------------------------------

/// A scalar moment function h_j, evaluable at support points.
///  - Power{j}: x^j (univariate)
///  - Piecewise{f}: arbitrary piecewise polynomial (MAD, Huber, ...)
///  - Monomial{exponents}: multivariate monomial prod x_k^{e_k}
///  - AbsAffine{a, b}: |a'x - b| (componentwise / pairwise deviations)
struct MomentFunction {
    struct Power { int exponent = 0; };
    struct Piecewise { PiecewisePolynomial f; };
    struct Monomial { std::vector<int> exponents; };
    struct AbsAffine { Eigen::VectorXd a; double b = 0.0; };

    std::variant<Power, Piecewise, Monomial, AbsAffine> kind = Power{0};

    static MomentFunction power(int j) { return {Power{j}}; }
    static MomentFunction piecewise(PiecewisePolynomial f) { return {Piecewise{std::move(f)}}; }
    static MomentFunction monomial(std::vector<int> e) { return {Monomial{std::move(e)}}; }
    static MomentFunction abs_affine(Eigen::VectorXd a, double b) { return {AbsAffine{std::move(a), b}}; }

    double operator()(double x) const {
        if (auto* p = std::get_if<Power>(&kind)) return std::pow(x, p->exponent);
        if (auto* f = std::get_if<Piecewise>(&kind)) return (f->f)(x);
        Eigen::VectorXd v(1);
        v[0] = x;
        return (*this)(v);
    }

    double operator()(const Eigen::VectorXd& x) const {
        if (auto* p = std::get_if<Power>(&kind)) return std::pow(x[0], p->exponent);
        if (auto* f = std::get_if<Piecewise>(&kind)) return (f->f)(x[0]);
        if (auto* m = std::get_if<Monomial>(&kind)) {
            double v = 1.0;
            for (std::size_t k = 0; k < m->exponents.size(); ++k) v *= std::pow(x[static_cast<int>(k)], m->exponents[k]);
            return v;
        }
        auto& aa = std::get<AbsAffine>(kind);
        return std::abs(aa.a.dot(x) - aa.b);
    }

    bool is_power(int j) const {
        auto* p = std::get_if<Power>(&kind);
        return p && p->exponent == j;
    }
};

/// Generalized moment constraints E[h_j(X)] = q_j, j = 0..m; h_0 == 1, q_0 == 1.
struct MomentSpec {
    std::vector<MomentFunction> basis;
    std::vector<double> values;

    MomentSpec() {
        basis.push_back(MomentFunction::power(0));
        values.push_back(1.0);
    }

    /// Power basis {1, x, ..., x^m} with given raw moments (values[0] must be 1).
    static MomentSpec power_moments(std::vector<double> raw) {
        if (raw.empty() || std::abs(raw[0] - 1.0) > tolerances().weight_norm)
            throw std::invalid_argument("MomentSpec: values[0] must be the unit mass");
        raw[0] = 1.0;
        MomentSpec s;
        s.basis.clear();
        s.values = std::move(raw);
        for (std::size_t j = 0; j < s.values.size(); ++j) s.basis.push_back(MomentFunction::power(static_cast<int>(j)));
        return s;
    }

    /// {1, x, x^2} from mean and standard deviation.
    static MomentSpec mean_variance(double mu, double sigma) {
        return power_moments({1.0, mu, sigma * sigma + mu * mu});
    }

    /// {1, x, |x - mu|} with E|X - mu| = d.
    static MomentSpec mean_mad(double mu, double d) {
        MomentSpec s;
        s.basis = {MomentFunction::power(0), MomentFunction::power(1),
                   MomentFunction::piecewise(PiecewisePolynomial::abs_deviation(mu))};
        s.values = {1.0, mu, d};
        return s;
    }

    std::size_t size() const { return basis.size(); }
    /// Highest index m (number of non-unit moment rows).
    int order() const { return static_cast<int>(basis.size()) - 1; }

    bool is_power_basis() const {
        for (std::size_t j = 0; j < basis.size(); ++j)
            if (!basis[j].is_power(static_cast<int>(j))) return false;
        return true;
    }

    void check_well_formed() const {
        if (basis.size() != values.size())
            throw std::invalid_argument("MomentSpec: basis and values length mismatch");
        if (basis.empty() || !basis[0].is_power(0) || values[0] != 1.0)
            throw std::invalid_argument("MomentSpec: index 0 must be the constant function with value 1");
    }
};

// ---------------------------------------------------------------------------
// Piecewise-affine max costs: f(nu, x) = max_l { s_l(nu)'x + t_l(nu) }
// ---------------------------------------------------------------------------

struct PiecewiseAffineMax {
    /// One term, affine in the decision nu:
    ///   slope  s_l(nu) = slope_nu * nu + slope_0        (length n)
    ///   offset t_l(nu) = intercept_nu' nu + intercept_0
    struct Term {
        Eigen::MatrixXd slope_nu;     // n x p
        Eigen::VectorXd slope_0;      // n
        Eigen::VectorXd intercept_nu; // p
        double intercept_0 = 0.0;
    };
    std::vector<Term> terms;
    int decision_dim = 0;
    int uncertainty_dim = 0;

    void check_well_formed() const {
        if (terms.empty()) throw std::invalid_argument("PiecewiseAffineMax: needs at least one term");
        for (const auto& t : terms) {
            if (t.slope_nu.rows() != uncertainty_dim || t.slope_nu.cols() != decision_dim ||
                t.slope_0.size() != uncertainty_dim || t.intercept_nu.size() != decision_dim)
                throw std::invalid_argument("PiecewiseAffineMax: term dimensions inconsistent");
            if (!t.slope_nu.allFinite() || !t.slope_0.allFinite() || !t.intercept_nu.allFinite() ||
                !std::isfinite(t.intercept_0))
                throw std::invalid_argument("PiecewiseAffineMax: non-finite coefficient");
        }
    }

    Eigen::VectorXd slope(std::size_t l, const Eigen::VectorXd& nu) const {
        return terms[l].slope_nu * nu + terms[l].slope_0;
    }
    double intercept(std::size_t l, const Eigen::VectorXd& nu) const {
        return terms[l].intercept_nu.dot(nu) + terms[l].intercept_0;
    }
    double operator()(const Eigen::VectorXd& nu, const Eigen::VectorXd& x) const {
        double v = -kInf;
        for (std::size_t l = 0; l < terms.size(); ++l) v = std::max(v, slope(l, nu).dot(x) + intercept(l, nu));
        return v;
    }
};

// ---------------------------------------------------------------------------
// Dispersion descriptions and AmbiguitySpec
// ---------------------------------------------------------------------------

struct DispersionSpec {
    struct Variance { double sigma = 1.0; };
    struct MAD {
        double d = 1.0;
        double support_lo = 0.0, support_hi = 1.0;
    };
    struct ConvexDispersion {
        PiecewisePolynomial d;
        double level = 1.0;  // sigma-bar
    };
    struct CovarianceUB { Eigen::MatrixXd Sigma; };
    struct ComponentwiseMAD {
        Eigen::MatrixXd bounds;  // diag: E|X_i - m_i|; (i<j): plus-pair, (j>i): minus-pair
        Eigen::VectorXd center;
    };
    struct None {};

    std::variant<None, Variance, MAD, ConvexDispersion, CovarianceUB, ComponentwiseMAD> kind = None{};
};

/// Support box [lo_k, hi_k] per dimension; entries may be infinite.
struct SupportBox {
    Eigen::VectorXd lo, hi;

    static SupportBox real_line(int dim = 1) {
        SupportBox s;
        s.lo = Eigen::VectorXd::Constant(dim, -kInf);
        s.hi = Eigen::VectorXd::Constant(dim, kInf);
        return s;
    }
    static SupportBox interval(double a, double b) {
        SupportBox s;
        s.lo = Eigen::VectorXd::Constant(1, a);
        s.hi = Eigen::VectorXd::Constant(1, b);
        return s;
    }
    int dim() const { return static_cast<int>(lo.size()); }
    bool contains(double x) const { return x >= lo[0] - 1e-12 && x <= hi[0] + 1e-12; }
};

struct AmbiguitySpec {
    MomentSpec moments;
    DispersionSpec dispersion;
    StructuralClass structure = StructuralClass::none();
    SupportBox support = SupportBox::real_line();
};

// ---------------------------------------------------------------------------
// Explicit distributions (mixtures of Diracs / uniform intervals / symmetric pairs)
// ---------------------------------------------------------------------------

struct ExplicitDistribution {
    struct Dirac { double point = 0.0; };
    struct UniformInterval { double lo = 0.0, hi = 1.0; };
    struct SymmetricDiracPair { double center = 0.0, offset = 0.0; };
    using Component = std::variant<Dirac, UniformInterval, SymmetricDiracPair>;

    struct WeightedComponent {
        double weight = 1.0;
        Component component = Dirac{0.0};
    };
    std::vector<WeightedComponent> components;

    static ExplicitDistribution dirac(double x) { return {{{1.0, Dirac{x}}}}; }
    static ExplicitDistribution two_point(double x1, double p1, double x2, double p2) {
        return {{{p1, Dirac{x1}}, {p2, Dirac{x2}}}};
    }
    static ExplicitDistribution uniform(double lo, double hi) { return {{{1.0, UniformInterval{lo, hi}}}}; }

    void add(double w, Component c) { components.push_back({w, std::move(c)}); }

    void check_well_formed() const {
        double total = 0.0;
        for (const auto& wc : components) {
            if (!(wc.weight > 0.0)) throw std::invalid_argument("ExplicitDistribution: weights must be positive");
            if (auto* u = std::get_if<UniformInterval>(&wc.component))
                if (!(u->lo < u->hi)) throw std::invalid_argument("ExplicitDistribution: uniform requires lo < hi");
            total += wc.weight;
        }
        if (std::abs(total - 1.0) > tolerances().weight_norm)
            throw std::invalid_argument("ExplicitDistribution: weights must sum to 1");
    }
};

// ---------------------------------------------------------------------------
// Bound results
// ---------------------------------------------------------------------------

enum class BoundStatus { Tight, Divergent, Uninformative, Infeasible };

inline const char* to_string(BoundStatus s) {
    switch (s) {
        case BoundStatus::Tight: return "tight";
        case BoundStatus::Divergent: return "divergent";
        case BoundStatus::Uninformative: return "uninformative";
        case BoundStatus::Infeasible: return "infeasible";
    }
    return "?";
}

struct BoundResult {
    double value = 0.0;
    BoundStatus status = BoundStatus::Tight;
    std::optional<double> robust_value;           // set for Uninformative
    std::optional<std::vector<double>> dual_certificate;  // lambda_0..lambda_{m+1}
    std::optional<ExplicitDistribution> extremal;
    std::optional<double> gap;  // dual minus primal-oracle value, when both computed

    static BoundResult divergent() {
        BoundResult r;
        r.value = kInf;
        r.status = BoundStatus::Divergent;
        return r;
    }
    static BoundResult infeasible() {
        BoundResult r;
        r.value = std::numeric_limits<double>::quiet_NaN();
        r.status = BoundStatus::Infeasible;
        return r;
    }
};

}  // namespace condbound
