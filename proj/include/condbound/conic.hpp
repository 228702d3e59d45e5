#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "condbound/types.hpp"

namespace condbound::conic {

// ---------------------------------------------------------------------------
// Symmetric vectorization (svec).
//
// A symmetric n x n matrix M is packed column-major over the lower triangle:
//   svec(M) = (M00, r*M10, ..., r*M{n-1,0}, M11, r*M21, ...),  r = sqrt(2),
// so that <svec(A), svec(B)> equals the Frobenius inner product <A, B>.
// ---------------------------------------------------------------------------

inline int svec_len(int n) { return n * (n + 1) / 2; }

inline int svec_index(int i, int j, int n) {
    if (i < j) std::swap(i, j);  // lower triangle: i >= j
    return j * n - j * (j - 1) / 2 + (i - j);
}

inline Eigen::VectorXd svec(const Eigen::MatrixXd& M) {
    const int n = static_cast<int>(M.rows());
    const double r = std::sqrt(2.0);
    Eigen::VectorXd v(svec_len(n));
    int k = 0;
    for (int j = 0; j < n; ++j)
        for (int i = j; i < n; ++i) v[k++] = (i == j) ? M(i, j) : r * 0.5 * (M(i, j) + M(j, i));
    return v;
}

inline Eigen::MatrixXd smat(const Eigen::VectorXd& v, int n) {
    const double r = std::sqrt(2.0);
    Eigen::MatrixXd M(n, n);
    int k = 0;
    for (int j = 0; j < n; ++j)
        for (int i = j; i < n; ++i) {
            double x = v[k++];
            if (i == j) M(i, j) = x;
            else M(i, j) = M(j, i) = x / r;
        }
    return M;
}

// ---------------------------------------------------------------------------
// Cones and program representation
// ---------------------------------------------------------------------------

struct ConeSpec {
    enum class Kind { Nonneg, SecondOrder, Psd };
    Kind kind = Kind::Nonneg;
    /// Nonneg/SecondOrder: vector length. Psd: matrix side n (slice length n(n+1)/2).
    int size = 1;

    int slice_len() const { return kind == Kind::Psd ? svec_len(size) : size; }
    static ConeSpec nonneg(int k) { return {Kind::Nonneg, k}; }
    static ConeSpec second_order(int k) { return {Kind::SecondOrder, k}; }
    static ConeSpec psd(int n) { return {Kind::Psd, n}; }
};

/// Sparse affine expression over program variables.
struct LinExpr {
    std::map<int, double> terms;
    double constant = 0.0;

    LinExpr() = default;
    /*implicit*/ LinExpr(double c) : constant(c) {}
    static LinExpr var(int i, double coeff = 1.0) {
        LinExpr e;
        e.terms[i] = coeff;
        return e;
    }

    LinExpr& operator+=(const LinExpr& o) {
        for (auto& [i, v] : o.terms) terms[i] += v;
        constant += o.constant;
        return *this;
    }
    LinExpr& operator-=(const LinExpr& o) {
        for (auto& [i, v] : o.terms) terms[i] -= v;
        constant -= o.constant;
        return *this;
    }
    LinExpr& operator*=(double s) {
        for (auto& [i, v] : terms) v *= s;
        constant *= s;
        return *this;
    }
    friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
    friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
    friend LinExpr operator*(LinExpr a, double s) { return a *= s; }
    friend LinExpr operator*(double s, LinExpr a) { return a *= s; }
    friend LinExpr operator-(LinExpr a) { return a *= -1.0; }

    double eval(const Eigen::VectorXd& x) const {
        double v = constant;
        for (auto& [i, c] : terms) v += c * x[i];
        return v;
    }
    bool well_posed() const {
        if (!std::isfinite(constant)) return false;
        for (auto& [i, c] : terms)
            if (!std::isfinite(c)) return false;
        return true;
    }
};

struct SolverSettings {
    double feasibility_tol = 1e-9;
    double gap_tol = 1e-9;
    long max_iterations = 200000;
    bool verbose = false;
};

enum class SolveStatus { Optimal, PrimalInfeasible, DualInfeasibleOrUnbounded, NumericalTrouble };

inline const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::PrimalInfeasible: return "primal_infeasible";
        case SolveStatus::DualInfeasibleOrUnbounded: return "dual_infeasible_or_unbounded";
        case SolveStatus::NumericalTrouble: return "numerical_trouble";
    }
    return "?";
}

/// Status mapping table for callers that hand the solver a minimization dual
/// of a moment problem (the only place this translation lives):
///  - handed program infeasible  => the moment supremum grows without bound,
///  - handed program unbounded   => the moment constraints are inconsistent.
inline BoundStatus map_status_for_moment_dual(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return BoundStatus::Tight;
        case SolveStatus::PrimalInfeasible: return BoundStatus::Divergent;
        case SolveStatus::DualInfeasibleOrUnbounded: return BoundStatus::Infeasible;
        case SolveStatus::NumericalTrouble: break;
    }
    throw SolverFailure("conic solve ended with numerical trouble");
}

struct SolveOutcome {
    SolveStatus status = SolveStatus::NumericalTrouble;
    Eigen::VectorXd x;             // primal values per program variable
    Eigen::VectorXd eq_duals;      // one per equality row
    std::vector<Eigen::VectorXd> cone_duals;  // one per membership
    double objective = 0.0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double gap = 0.0;
    int iterations = 0;
};

/// Solver-agnostic conic program:
///   minimize   objective(x)
///   subject to equalities(x) == 0 and each membership slice in its cone.
class ConeProgram {
public:
    struct Membership {
        ConeSpec cone;
        std::vector<LinExpr> exprs;
    };

    int add_var() { return num_vars_++; }
    std::vector<int> add_vars(int k) {
        std::vector<int> idx(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = add_var();
        return idx;
    }

    int num_vars() const { return num_vars_; }
    void set_objective(LinExpr e) { objective_ = std::move(e); }
    const LinExpr& objective() const { return objective_; }

    void add_equality(LinExpr e) { equalities_.push_back(std::move(e)); }
    /// expr >= 0
    void add_nonneg(LinExpr e) { add_membership(ConeSpec::nonneg(1), {std::move(e)}); }
    void add_membership(ConeSpec cone, std::vector<LinExpr> exprs) {
        if (static_cast<int>(exprs.size()) != cone.slice_len())
            throw std::invalid_argument("ConeProgram: slice length does not match cone");
        memberships_.push_back({cone, std::move(exprs)});
    }

    const std::vector<LinExpr>& equalities() const { return equalities_; }
    const std::vector<Membership>& memberships() const { return memberships_; }

    void check_well_posed() const {
        auto check = [&](const LinExpr& e) {
            if (!e.well_posed()) throw std::invalid_argument("ConeProgram: non-finite coefficient");
            for (auto& [i, c] : e.terms)
                if (i < 0 || i >= num_vars_) throw std::invalid_argument("ConeProgram: variable index out of range");
        };
        check(objective_);
        for (auto& e : equalities_) check(e);
        for (auto& mb : memberships_)
            for (auto& e : mb.exprs) check(e);
    }

    /// Adds Gram-matrix variables Q (PSD) and equality rows matching the
    /// coefficients of an affine polynomial expression to z(x)' Q z(x),
    /// z the monomial basis of degree `degree`/2. Returns the svec variable
    /// indices of Q.
    std::vector<int> psd_from_gram(const std::vector<LinExpr>& poly_coeffs, int degree) {
        if (degree < 0 || degree % 2 != 0)
            throw DegreeMismatch("psd_from_gram: degree must be even and nonnegative");
        if (static_cast<int>(poly_coeffs.size()) > degree + 1)
            throw DegreeMismatch("psd_from_gram: polynomial degree exceeds requested degree");
        const int k = degree / 2 + 1;  // basis size
        std::vector<int> q = add_vars(svec_len(k));
        const double r = std::sqrt(2.0);
        for (int power = 0; power <= degree; ++power) {
            LinExpr row = (power < static_cast<int>(poly_coeffs.size())) ? poly_coeffs[static_cast<std::size_t>(power)]
                                                                         : LinExpr(0.0);
            // subtract sum_{i+j=power} Q_ij
            for (int i = 0; i < k; ++i) {
                int j = power - i;
                if (j < 0 || j >= k || j > i) continue;
                int idx = q[static_cast<std::size_t>(svec_index(i, j, k))];
                row -= LinExpr::var(idx, i == j ? 1.0 : r);
            }
            add_equality(row);
        }
        std::vector<LinExpr> slice;
        slice.reserve(q.size());
        for (int idx : q) slice.push_back(LinExpr::var(idx));
        add_membership(ConeSpec::psd(k), std::move(slice));
        return q;
    }

private:
    int num_vars_ = 0;
    LinExpr objective_;
    std::vector<LinExpr> equalities_;
    std::vector<Membership> memberships_;
};

// ---------------------------------------------------------------------------
// Plain-text sparse dump / load (hex floats for bitwise round-trips)
// ---------------------------------------------------------------------------

inline std::string dump_program(const ConeProgram& prog) {
    char buf[64];
    auto hex = [&](double v) {
        std::snprintf(buf, sizeof buf, "%a", v);
        return std::string(buf);
    };
    std::string out;
    out += "coneprogram 1\n";
    out += "vars " + std::to_string(prog.num_vars()) + "\n";
    auto expr_line = [&](const char* tag, const LinExpr& e) {
        std::string line(tag);
        line += " " + hex(e.constant);
        for (auto& [i, c] : e.terms) line += " " + std::to_string(i) + ":" + hex(c);
        return line + "\n";
    };
    out += expr_line("min", prog.objective());
    for (auto& e : prog.equalities()) out += expr_line("eq", e);
    for (auto& mb : prog.memberships()) {
        const char* kind = mb.cone.kind == ConeSpec::Kind::Nonneg ? "nonneg"
                           : mb.cone.kind == ConeSpec::Kind::SecondOrder ? "soc" : "psd";
        out += std::string("cone ") + kind + " " + std::to_string(mb.cone.size) + "\n";
        for (auto& e : mb.exprs) out += expr_line("  row", e);
    }
    return out;
}

inline ConeProgram load_program(const std::string& text) {
    ConeProgram prog;
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        if (end > start) lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    auto parse_expr = [](const std::string& line, std::size_t from) {
        LinExpr e;
        std::size_t pos = from;
        bool first = true;
        while (pos < line.size()) {
            while (pos < line.size() && line[pos] == ' ') ++pos;
            if (pos >= line.size()) break;
            std::size_t sp = line.find(' ', pos);
            if (sp == std::string::npos) sp = line.size();
            std::string tok = line.substr(pos, sp - pos);
            pos = sp;
            std::size_t colon = tok.find(':');
            if (first && colon == std::string::npos) {
                e.constant = std::strtod(tok.c_str(), nullptr);
            } else {
                int idx = std::stoi(tok.substr(0, colon));
                e.terms[idx] = std::strtod(tok.c_str() + colon + 1, nullptr);
            }
            first = false;
        }
        return e;
    };
    ConeSpec pending_cone;
    std::vector<LinExpr> pending_rows;
    auto flush_cone = [&]() {
        if (!pending_rows.empty()) {
            prog.add_membership(pending_cone, std::move(pending_rows));
            pending_rows.clear();
        }
    };
    for (auto& raw : lines) {
        std::string line = raw;
        std::size_t indent = line.find_first_not_of(' ');
        if (indent == std::string::npos) continue;
        if (line.compare(indent, 4, "row ") == 0) {
            pending_rows.push_back(parse_expr(line, indent + 4));
            continue;
        }
        flush_cone();
        if (line.rfind("vars ", 0) == 0) {
            prog.add_vars(std::stoi(line.substr(5)));
        } else if (line.rfind("min ", 0) == 0) {
            prog.set_objective(parse_expr(line, 4));
        } else if (line.rfind("eq ", 0) == 0) {
            prog.add_equality(parse_expr(line, 3));
        } else if (line.rfind("cone ", 0) == 0) {
            std::size_t sp = line.find(' ', 5);
            std::string kind = line.substr(5, sp - 5);
            pending_cone.size = std::stoi(line.substr(sp + 1));
            pending_cone.kind = kind == "nonneg" ? ConeSpec::Kind::Nonneg
                                : kind == "soc" ? ConeSpec::Kind::SecondOrder : ConeSpec::Kind::Psd;
        }
    }
    flush_cone();
    return prog;
}

}  // namespace condbound::conic

#include "condbound/detail/ipm.hpp"

namespace condbound::conic {

/// Solve a cone program with the interior-point backend.
inline SolveOutcome solve(const ConeProgram& prog, const SolverSettings& settings = {}) {
    prog.check_well_posed();
    return detail::solve_ipm(prog, settings);
}

}  // namespace condbound::conic
