#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace condbound {

/// Dense univariate polynomial, coefficients in ascending powers.
/// The zero polynomial is represented by an empty (or all-zero) vector.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<double> coeffs) : c_(coeffs) { trim(); }

    static Poly constant(double v) { return Poly({v}); }
    static Poly identity() { return Poly({0.0, 1.0}); }
    /// x^k
    static Poly monomial(int k, double coeff = 1.0) {
        std::vector<double> c(static_cast<std::size_t>(k) + 1, 0.0);
        c.back() = coeff;
        return Poly(std::move(c));
    }

    const std::vector<double>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? 0 : static_cast<int>(c_.size()) - 1; }

    double operator()(double x) const {
        double v = 0.0;
        for (std::size_t i = c_.size(); i-- > 0;) v = v * x + c_[i];
        return v;
    }

    double coeff(std::size_t k) const { return k < c_.size() ? c_[k] : 0.0; }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Poly& operator*=(double s) {
        for (double& v : c_) v *= s;
        trim();
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, double s) { return a *= s; }
    friend Poly operator*(double s, Poly a) { return a *= s; }
    friend Poly operator-(Poly a) { return a *= -1.0; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<double> r(a.c_.size() + b.c_.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<double> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<double>(i);
        return Poly(std::move(r));
    }

    /// Antiderivative with zero constant term.
    Poly antiderivative() const {
        if (c_.empty()) return Poly();
        std::vector<double> r(c_.size() + 1, 0.0);
        for (std::size_t i = 0; i < c_.size(); ++i) r[i + 1] = c_[i] / static_cast<double>(i + 1);
        return Poly(std::move(r));
    }

    double integral(double a, double b) const {
        Poly F = antiderivative();
        return F(b) - F(a);
    }

    /// p(a + b*y) as a polynomial in y.
    Poly compose_affine(double a, double b) const {
        Poly result;
        Poly basis = Poly::constant(1.0);  // (a + b y)^k, built incrementally
        Poly lin({a, b});
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k] != 0.0) result += basis * c_[k];
            if (k + 1 < c_.size()) basis = basis * lin;
        }
        return result;
    }

    /// Right derivative equals the ordinary derivative for a polynomial;
    /// kept for call sites that mirror piecewise usage.
    double derivative_at(double x) const { return derivative()(x); }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
    }
    std::vector<double> c_;
};

/// Piecewise polynomial on a (possibly unbounded) interval domain.
/// pieces.size() == breakpoints.size() + 1; at a breakpoint the value is
/// taken from the right-hand piece.
struct PiecewisePolynomial {
    std::vector<double> breakpoints;  // strictly increasing
    std::vector<Poly> pieces;         // pieces[i] on (bp[i-1], bp[i])
    double domain_lo = -std::numeric_limits<double>::infinity();
    double domain_hi = std::numeric_limits<double>::infinity();

    PiecewisePolynomial() : pieces(1) {}
    explicit PiecewisePolynomial(Poly p) : pieces{std::move(p)} {}
    PiecewisePolynomial(std::vector<double> bps, std::vector<Poly> ps)
        : breakpoints(std::move(bps)), pieces(std::move(ps)) {
        validate();
    }

    void validate() const {
        if (pieces.size() != breakpoints.size() + 1)
            throw std::invalid_argument("PiecewisePolynomial: pieces count must be breakpoints count + 1");
        for (std::size_t i = 1; i < breakpoints.size(); ++i)
            if (!(breakpoints[i - 1] < breakpoints[i]))
                throw std::invalid_argument("PiecewisePolynomial: breakpoints must be strictly increasing");
        for (const Poly& p : pieces)
            for (double c : p.coeffs())
                if (!std::isfinite(c)) throw std::invalid_argument("PiecewisePolynomial: non-finite coefficient");
    }

    /// Index of the piece governing x (right-piece convention at breakpoints).
    std::size_t piece_index(double x) const {
        std::size_t i = 0;
        while (i < breakpoints.size() && x >= breakpoints[i]) ++i;
        return i;
    }

    double operator()(double x) const { return pieces[piece_index(x)](x); }

    /// Left-limit value, relevant exactly at breakpoints.
    double left_value(double x) const {
        std::size_t i = 0;
        while (i < breakpoints.size() && x > breakpoints[i]) ++i;
        return pieces[i](x);
    }

    int degree() const {
        int d = 0;
        for (const Poly& p : pieces) d = std::max(d, p.degree());
        return d;
    }

    bool is_constant() const {
        for (const Poly& p : pieces)
            if (p.degree() > 0) return false;
        for (std::size_t i = 1; i < pieces.size(); ++i)
            if (pieces[i].coeff(0) != pieces[0].coeff(0)) return false;
        return true;
    }

    /// Exact integral over [a, b] within the domain.
    double integral(double a, double b) const {
        if (a >= b) return 0.0;
        double total = 0.0;
        double lo = a;
        for (std::size_t i = 0; i <= breakpoints.size(); ++i) {
            double hi = (i < breakpoints.size()) ? breakpoints[i] : b;
            hi = std::min(hi, b);
            if (hi > lo) total += pieces[i].integral(lo, hi);
            lo = std::max(lo, hi);
            if (lo >= b) break;
        }
        return total;
    }

    double derivative_right(double x) const { return pieces[piece_index(x)].derivative()(x); }

    static PiecewisePolynomial constant(double v) { return PiecewisePolynomial(Poly::constant(v)); }
    static PiecewisePolynomial identity() { return PiecewisePolynomial(Poly::identity()); }
    /// Indicator of [c, infinity).
    static PiecewisePolynomial indicator_above(double c) {
        return PiecewisePolynomial({c}, {Poly(), Poly::constant(1.0)});
    }
    /// Stop-loss max(x - c, 0).
    static PiecewisePolynomial stop_loss(double c) {
        return PiecewisePolynomial({c}, {Poly(), Poly({-c, 1.0})});
    }
    /// Mean absolute deviation integrand |x - center|.
    static PiecewisePolynomial abs_deviation(double center) {
        return PiecewisePolynomial({center}, {Poly({center, -1.0}), Poly({-center, 1.0})});
    }
    /// Huber loss with knee k about 0: x^2/2 for |x|<=k, k(|x|-k/2) beyond.
    static PiecewisePolynomial huber(double k) {
        return PiecewisePolynomial({-k, k}, {Poly({-k * k / 2.0, -k}), Poly({0.0, 0.0, 0.5}), Poly({-k * k / 2.0, k})});
    }
};

}  // namespace condbound
