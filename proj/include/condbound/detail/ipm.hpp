#pragma once

// Interior-point backend: homogeneous self-dual embedding with Nesterov-Todd
// scaling and Mehrotra predictor-corrector, over products of nonnegative,
// second-order and PSD cones. Dense linear algebra; intended for the small
// programs this library generates.

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace condbound::conic::detail {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct StdForm {
    // min c'x  s.t.  A x = b,  G x + s = h,  s in K
    VectorXd c;
    MatrixXd A;
    VectorXd b;
    MatrixXd G;
    VectorXd h;
    std::vector<ConeSpec> cones;
    std::vector<int> cone_offsets;
    double obj_const = 0.0;
};

inline StdForm to_std_form(const ConeProgram& prog) {
    StdForm f;
    const int n = prog.num_vars();
    const int p = static_cast<int>(prog.equalities().size());
    int m = 0;
    for (auto& mb : prog.memberships()) m += mb.cone.slice_len();

    f.c = VectorXd::Zero(n);
    for (auto& [i, v] : prog.objective().terms) f.c[i] += v;
    f.obj_const = prog.objective().constant;

    f.A = MatrixXd::Zero(p, n);
    f.b = VectorXd::Zero(p);
    for (int r = 0; r < p; ++r) {
        const LinExpr& e = prog.equalities()[static_cast<std::size_t>(r)];
        for (auto& [i, v] : e.terms) f.A(r, i) += v;
        f.b[r] = -e.constant;
    }

    f.G = MatrixXd::Zero(m, n);
    f.h = VectorXd::Zero(m);
    int row = 0;
    for (auto& mb : prog.memberships()) {
        f.cones.push_back(mb.cone);
        f.cone_offsets.push_back(row);
        for (auto& e : mb.exprs) {
            // slice expr = F x + g must lie in K;  G = -F, h = g.
            for (auto& [i, v] : e.terms) f.G(row, i) -= v;
            f.h[row] = e.constant;
            ++row;
        }
    }
    return f;
}

// ---------------------------------------------------------------------------
// Per-block cone operations
// ---------------------------------------------------------------------------

struct BlockScaling {
    ConeSpec cone;
    int offset = 0;
    // Nonneg
    VectorXd w;
    // SecondOrder
    double eta = 1.0;
    VectorXd wbar;
    // Psd
    MatrixXd R, Rinv;
    VectorXd lam_diag;

    VectorXd lambda;  // scaled point, slice coordinates
    MatrixXd H;       // W'W as a dense block

    int len() const { return cone.slice_len(); }

    double barrier_degree() const {
        switch (cone.kind) {
            case ConeSpec::Kind::Nonneg: return cone.size;
            case ConeSpec::Kind::SecondOrder: return 1.0;
            case ConeSpec::Kind::Psd: return cone.size;
        }
        return 0.0;
    }

    VectorXd identity_elem() const {
        switch (cone.kind) {
            case ConeSpec::Kind::Nonneg: return VectorXd::Ones(cone.size);
            case ConeSpec::Kind::SecondOrder: {
                VectorXd e = VectorXd::Zero(cone.size);
                e[0] = 1.0;
                return e;
            }
            case ConeSpec::Kind::Psd: return svec(MatrixXd::Identity(cone.size, cone.size));
        }
        return VectorXd();
    }

    bool compute(const VectorXd& s, const VectorXd& z) {
        switch (cone.kind) {
            case ConeSpec::Kind::Nonneg: {
                if ((s.array() <= 0).any() || (z.array() <= 0).any()) return false;
                w = (s.array() / z.array()).sqrt().matrix();
                lambda = (s.array() * z.array()).sqrt().matrix();
                H = w.array().square().matrix().asDiagonal();
                return true;
            }
            case ConeSpec::Kind::SecondOrder: {
                const int k = cone.size;
                double sres = s[0] * s[0] - s.tail(k - 1).squaredNorm();
                double zres = z[0] * z[0] - z.tail(k - 1).squaredNorm();
                if (s[0] <= 0 || z[0] <= 0 || sres <= 0 || zres <= 0) return false;
                VectorXd sbar = s / std::sqrt(sres), zbar = z / std::sqrt(zres);
                double gamma = std::sqrt((1.0 + sbar.dot(zbar)) / 2.0);
                wbar = VectorXd(k);
                wbar[0] = (sbar[0] + zbar[0]) / (2.0 * gamma);
                wbar.tail(k - 1) = (sbar.tail(k - 1) - zbar.tail(k - 1)) / (2.0 * gamma);
                eta = std::pow(sres / zres, 0.25);
                // H = eta^2 (2 wbar wbar' - J)
                H = 2.0 * wbar * wbar.transpose();
                H(0, 0) -= 1.0;
                for (int i = 1; i < k; ++i) H(i, i) += 1.0;
                H *= eta * eta;
                lambda = apply_W(z);
                return true;
            }
            case ConeSpec::Kind::Psd: {
                const int n = cone.size;
                MatrixXd S = smat(s, n), Z = smat(z, n);
                Eigen::LLT<MatrixXd> ls(S), lz(Z);
                if (ls.info() != Eigen::Success || lz.info() != Eigen::Success) return false;
                MatrixXd Ls = ls.matrixL(), Lz = lz.matrixL();
                Eigen::JacobiSVD<MatrixXd> svd(Lz.transpose() * Ls, Eigen::ComputeFullU | Eigen::ComputeFullV);
                VectorXd d = svd.singularValues();
                if ((d.array() <= 0).any()) return false;
                VectorXd dis = d.array().sqrt().inverse().matrix();
                R = Ls * svd.matrixV() * dis.asDiagonal();
                Rinv = dis.asDiagonal() * svd.matrixU().transpose() * Lz.transpose();
                lam_diag = d;
                lambda = svec(MatrixXd(d.asDiagonal()));
                // Dense matrix of u -> svec(RR' mat(u) RR')
                MatrixXd RRt = R * R.transpose();
                const int L = svec_len(n);
                H.resize(L, L);
                VectorXd unit = VectorXd::Zero(L);
                for (int j = 0; j < L; ++j) {
                    unit[j] = 1.0;
                    H.col(j) = svec(RRt * smat(unit, n) * RRt);
                    unit[j] = 0.0;
                }
                H = 0.5 * (H + H.transpose().eval());
                return true;
            }
        }
        return false;
    }

    VectorXd apply_W(const VectorXd& u) const {
        switch (cone.kind) {
            case ConeSpec::Kind::Nonneg: return (w.array() * u.array()).matrix();
            case ConeSpec::Kind::SecondOrder: {
                const int k = cone.size;
                VectorXd r(k);
                double t = wbar.tail(k - 1).dot(u.tail(k - 1));
                r[0] = wbar[0] * u[0] + t;
                r.tail(k - 1) = u.tail(k - 1) + (u[0] + t / (1.0 + wbar[0])) * wbar.tail(k - 1);
                return eta * r;
            }
            case ConeSpec::Kind::Psd:
                return svec(R.transpose() * smat(u, cone.size) * R);
        }
        return u;
    }

    VectorXd apply_Wt(const VectorXd& u) const {
        if (cone.kind == ConeSpec::Kind::Psd) return svec(R * smat(u, cone.size) * R.transpose());
        return apply_W(u);  // Nonneg/SOC scalings are symmetric
    }

    VectorXd apply_WinvT(const VectorXd& u) const {
        switch (cone.kind) {
            case ConeSpec::Kind::Nonneg: return (u.array() / w.array()).matrix();
            case ConeSpec::Kind::SecondOrder: {
                const int k = cone.size;
                VectorXd r(k);
                double t = wbar.tail(k - 1).dot(u.tail(k - 1));
                r[0] = wbar[0] * u[0] - t;
                r.tail(k - 1) = u.tail(k - 1) + (-u[0] + t / (1.0 + wbar[0])) * wbar.tail(k - 1);
                return r / eta;
            }
            case ConeSpec::Kind::Psd:
                return svec(Rinv * smat(u, cone.size) * Rinv.transpose());
        }
        return u;
    }

    VectorXd jordan(const VectorXd& u, const VectorXd& v) const {
        switch (cone.kind) {
            case ConeSpec::Kind::Nonneg: return (u.array() * v.array()).matrix();
            case ConeSpec::Kind::SecondOrder: {
                const int k = cone.size;
                VectorXd r(k);
                r[0] = u.dot(v);
                r.tail(k - 1) = u[0] * v.tail(k - 1) + v[0] * u.tail(k - 1);
                return r;
            }
            case ConeSpec::Kind::Psd: {
                MatrixXd U = smat(u, cone.size), V = smat(v, cone.size);
                return svec(0.5 * (U * V + V * U));
            }
        }
        return u;
    }

    /// Solve lambda o r = d for r.
    VectorXd lambda_solve(const VectorXd& d) const {
        switch (cone.kind) {
            case ConeSpec::Kind::Nonneg: return (d.array() / lambda.array()).matrix();
            case ConeSpec::Kind::SecondOrder: {
                const int k = cone.size;
                double l0 = lambda[0];
                auto l1 = lambda.tail(k - 1);
                double det = l0 * l0 - l1.squaredNorm();
                VectorXd r(k);
                r[0] = (l0 * d[0] - l1.dot(d.tail(k - 1))) / det;
                r.tail(k - 1) = (d.tail(k - 1) - r[0] * l1) / l0;
                return r;
            }
            case ConeSpec::Kind::Psd: {
                const int n = cone.size;
                MatrixXd D = smat(d, n), Rm(n, n);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) Rm(i, j) = 2.0 * D(i, j) / (lam_diag[i] + lam_diag[j]);
                return svec(Rm);
            }
        }
        return d;
    }

    /// Largest alpha with u + alpha du remaining in the cone (may be +inf).
    double max_step(const VectorXd& u, const VectorXd& du) const {
        const double inf = std::numeric_limits<double>::infinity();
        switch (cone.kind) {
            case ConeSpec::Kind::Nonneg: {
                double a = inf;
                for (int i = 0; i < u.size(); ++i)
                    if (du[i] < 0) a = std::min(a, -u[i] / du[i]);
                return a;
            }
            case ConeSpec::Kind::SecondOrder: {
                const int k = cone.size;
                double A = du[0] * du[0] - du.tail(k - 1).squaredNorm();
                double B = 2.0 * (u[0] * du[0] - u.tail(k - 1).dot(du.tail(k - 1)));
                double C = u[0] * u[0] - u.tail(k - 1).squaredNorm();
                double a = inf;
                if (du[0] < 0) a = std::min(a, -u[0] / du[0]);
                double disc = B * B - 4.0 * A * C;
                if (std::abs(A) < 1e-300) {
                    if (B < 0) a = std::min(a, -C / B);
                } else if (disc >= 0) {
                    double sq = std::sqrt(disc);
                    double q = -(B + (B >= 0 ? sq : -sq)) / 2.0;
                    for (double root : {q / A, (q != 0.0 ? C / q : inf)})
                        if (root > 0 && std::isfinite(root)) a = std::min(a, root);
                }
                return a;
            }
            case ConeSpec::Kind::Psd: {
                const int n = cone.size;
                MatrixXd U = smat(u, n);
                Eigen::LLT<MatrixXd> llt(U);
                if (llt.info() != Eigen::Success) return 0.0;
                MatrixXd L = llt.matrixL();
                MatrixXd M = L.triangularView<Eigen::Lower>().solve(smat(du, n));
                M = L.triangularView<Eigen::Lower>().solve(M.transpose().eval());
                Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (M + M.transpose().eval()),
                                                           Eigen::EigenvaluesOnly);
                double lmin = es.eigenvalues().minCoeff();
                return lmin >= 0 ? inf : -1.0 / lmin;
            }
        }
        return 0.0;
    }
};

// ---------------------------------------------------------------------------
// HSD predictor-corrector loop
// ---------------------------------------------------------------------------

struct IpmWork {
    std::vector<BlockScaling> blocks;

    VectorXd apply_all(const VectorXd& v,
                       VectorXd (BlockScaling::*op)(const VectorXd&) const) const {
        VectorXd r(v.size());
        for (auto& blk : blocks) r.segment(blk.offset, blk.len()) = (blk.*op)(v.segment(blk.offset, blk.len()));
        return r;
    }
};

inline SolveOutcome solve_ipm(const ConeProgram& prog, const SolverSettings& settings) {
    StdForm f = to_std_form(prog);
    const int n = static_cast<int>(f.c.size());
    const int p = static_cast<int>(f.b.size());
    const int m = static_cast<int>(f.h.size());
    const double tol = settings.feasibility_tol;
    const double gap_tol = settings.gap_tol;
    const int max_iter = static_cast<int>(std::min<long>(settings.max_iterations, 500));

    SolveOutcome out;

    IpmWork work;
    double degree = 0.0;
    for (std::size_t i = 0; i < f.cones.size(); ++i) {
        BlockScaling blk;
        blk.cone = f.cones[i];
        blk.offset = f.cone_offsets[i];
        degree += blk.barrier_degree();
        work.blocks.push_back(std::move(blk));
    }

    VectorXd e(m);
    for (auto& blk : work.blocks) e.segment(blk.offset, blk.len()) = blk.identity_elem();

    VectorXd x = VectorXd::Zero(n), y = VectorXd::Zero(p);
    VectorXd s = e, z = e;
    double tau = 1.0, kappa = 1.0;

    const double resx0 = std::max(1.0, f.c.norm());
    const double resy0 = std::max(1.0, f.b.norm());
    const double resz0 = std::max(1.0, f.h.norm());

    const int dim = n + p + m;
    MatrixXd K(dim, dim);
    Eigen::PartialPivLU<MatrixXd> lu;

    auto kkt_solve = [&](const VectorXd& rhs) {
        VectorXd u = lu.solve(rhs);
        // one step of iterative refinement against the unregularized operator
        VectorXd r = rhs;
        r.head(n) -= f.A.transpose() * u.segment(n, p) + f.G.transpose() * u.tail(m);
        r.segment(n, p) -= f.A * u.head(n);
        VectorXd Hz(m);
        for (auto& blk : work.blocks)
            Hz.segment(blk.offset, blk.len()) = blk.H * u.tail(m).segment(blk.offset, blk.len());
        r.tail(m) -= f.G * u.head(n) - Hz;
        u += lu.solve(r);
        return u;
    };

    double best_err = std::numeric_limits<double>::infinity();
    SolveOutcome best;

    for (int iter = 0; iter <= max_iter; ++iter) {
        // residuals of the homogeneous model
        VectorXd rx = f.A.transpose() * y + f.G.transpose() * z + f.c * tau;
        VectorXd ry = f.A * x - f.b * tau;
        VectorXd rz = f.G * x + s - f.h * tau;
        double rtau = f.c.dot(x) + f.b.dot(y) + f.h.dot(z) + kappa;

        double pcost = f.c.dot(x) / tau;
        double dcost = -(f.b.dot(y) + f.h.dot(z)) / tau;
        double pres = std::max(ry.norm() / resy0, rz.norm() / resz0) / tau;
        double dres = rx.norm() / resx0 / tau;
        double gap = s.dot(z) / (tau * tau);
        double relgap = gap / std::max(1.0, std::abs(pcost));

        auto fill_point = [&](SolveOutcome& o) {
            o.x = x / tau;
            o.eq_duals = y / tau;
            o.cone_duals.clear();
            for (auto& blk : work.blocks) o.cone_duals.push_back(z.segment(blk.offset, blk.len()) / tau);
            o.objective = pcost + f.obj_const;
            o.primal_residual = pres;
            o.dual_residual = dres;
            o.gap = gap;
            o.iterations = iter;
        };

        if (pres <= tol && dres <= tol && (gap <= gap_tol || relgap <= gap_tol)) {
            out.status = SolveStatus::Optimal;
            fill_point(out);
            return out;
        }
        // infeasibility certificates
        double hz_by = f.b.dot(y) + f.h.dot(z);
        if (hz_by < 0) {
            double pinfres = (f.A.transpose() * y + f.G.transpose() * z).norm() / resx0 / (-hz_by);
            if (pinfres <= tol) {
                out.status = SolveStatus::PrimalInfeasible;
                fill_point(out);
                out.eq_duals = y / (-hz_by);
                return out;
            }
        }
        double cx = f.c.dot(x);
        if (cx < 0) {
            double dinfres =
                std::max((f.A * x).norm() / resy0, (f.G * x + s).norm() / resz0) / (-cx);
            if (dinfres <= tol) {
                out.status = SolveStatus::DualInfeasibleOrUnbounded;
                fill_point(out);
                out.x = x / (-cx);
                return out;
            }
        }

        double err = std::max({pres, dres, relgap});
        if (err < best_err) {
            best_err = err;
            best.status = SolveStatus::NumericalTrouble;
            fill_point(best);
        }
        if (iter == max_iter) break;

        // NT scaling
        bool ok = true;
        for (auto& blk : work.blocks)
            ok = ok && blk.compute(s.segment(blk.offset, blk.len()), z.segment(blk.offset, blk.len()));
        if (!ok) break;

        VectorXd lambda(m);
        for (auto& blk : work.blocks) lambda.segment(blk.offset, blk.len()) = blk.lambda;
        double mu = (s.dot(z) + tau * kappa) / (degree + 1.0);

        // assemble and factor KKT
        K.setZero();
        const double reg = 1e-11;
        for (int i = 0; i < n; ++i) K(i, i) = reg;
        K.block(0, n, n, p) = f.A.transpose();
        K.block(n, 0, p, n) = f.A;
        for (int i = 0; i < p; ++i) K(n + i, n + i) = -reg;
        K.block(0, n + p, n, m) = f.G.transpose();
        K.block(n + p, 0, m, n) = f.G;
        for (auto& blk : work.blocks)
            K.block(n + p + blk.offset, n + p + blk.offset, blk.len(), blk.len()) = -blk.H;
        for (int i = 0; i < m; ++i) K(n + p + i, n + p + i) -= reg;
        lu.compute(K);

        VectorXd rhs1(dim);
        rhs1.head(n) = -f.c;
        rhs1.segment(n, p) = f.b;
        rhs1.tail(m) = f.h;
        VectorXd u1 = kkt_solve(rhs1);

        auto direction = [&](double sigma_factor, const VectorXd& ds, double dtk, VectorXd& Dx, VectorXd& Dy,
                             VectorXd& Dz, VectorXd& Ds, double& Dtau, double& Dkappa) {
            VectorXd lam_inv_ds(m), Wt_lid(m);
            for (auto& blk : work.blocks) {
                VectorXd seg = blk.lambda_solve(ds.segment(blk.offset, blk.len()));
                lam_inv_ds.segment(blk.offset, blk.len()) = seg;
                Wt_lid.segment(blk.offset, blk.len()) = blk.apply_Wt(seg);
            }
            VectorXd rhs2(dim);
            rhs2.head(n) = -sigma_factor * rx;
            rhs2.segment(n, p) = -sigma_factor * ry;
            rhs2.tail(m) = -sigma_factor * rz - Wt_lid;
            VectorXd u2 = kkt_solve(rhs2);

            double num = -sigma_factor * rtau - f.c.dot(u2.head(n)) - f.b.dot(u2.segment(n, p)) -
                         f.h.dot(u2.tail(m)) - dtk / tau;
            double den = f.c.dot(u1.head(n)) + f.b.dot(u1.segment(n, p)) + f.h.dot(u1.tail(m)) - kappa / tau;
            Dtau = (std::abs(den) > 1e-300) ? num / den : 0.0;
            Dx = u2.head(n) + Dtau * u1.head(n);
            Dy = u2.segment(n, p) + Dtau * u1.segment(n, p);
            Dz = u2.tail(m) + Dtau * u1.tail(m);
            Ds.resize(m);
            for (auto& blk : work.blocks) {
                auto zseg = Dz.segment(blk.offset, blk.len());
                Ds.segment(blk.offset, blk.len()) =
                    Wt_lid.segment(blk.offset, blk.len()) - blk.H * zseg;
            }
            Dkappa = (dtk - kappa * Dtau) / tau;
        };

        auto step_bound = [&](const VectorXd& Ds, const VectorXd& Dz, double Dtau, double Dkappa) {
            double a = std::numeric_limits<double>::infinity();
            for (auto& blk : work.blocks) {
                a = std::min(a, blk.max_step(s.segment(blk.offset, blk.len()), Ds.segment(blk.offset, blk.len())));
                a = std::min(a, blk.max_step(z.segment(blk.offset, blk.len()), Dz.segment(blk.offset, blk.len())));
            }
            if (Dtau < 0) a = std::min(a, -tau / Dtau);
            if (Dkappa < 0) a = std::min(a, -kappa / Dkappa);
            return a;
        };

        // predictor
        VectorXd ds_aff(m);
        for (auto& blk : work.blocks)
            ds_aff.segment(blk.offset, blk.len()) =
                -blk.jordan(blk.lambda, blk.lambda);
        VectorXd dxa, dya, dza, dsa;
        double dtaua, dkappaa;
        direction(1.0, ds_aff, -tau * kappa, dxa, dya, dza, dsa, dtaua, dkappaa);
        double alpha_aff = std::min(1.0, step_bound(dsa, dza, dtaua, dkappaa));
        double sigma = std::pow(1.0 - alpha_aff, 3);
        sigma = std::min(1.0, std::max(sigma, 1e-8));

        // corrector
        VectorXd ds_comb(m);
        for (auto& blk : work.blocks) {
            auto seg_s = dsa.segment(blk.offset, blk.len());
            auto seg_z = dza.segment(blk.offset, blk.len());
            VectorXd corr = blk.jordan(blk.apply_WinvT(seg_s), blk.apply_W(seg_z));
            ds_comb.segment(blk.offset, blk.len()) =
                -blk.jordan(blk.lambda, blk.lambda) - corr + sigma * mu * blk.identity_elem();
        }
        double dtk_comb = -tau * kappa - dtaua * dkappaa + sigma * mu;
        VectorXd dx, dy, dz, dsv;
        double dtau, dkappa;
        direction(1.0 - sigma, ds_comb, dtk_comb, dx, dy, dz, dsv, dtau, dkappa);
        double alpha = std::min(1.0, 0.99 * step_bound(dsv, dz, dtau, dkappa));
        if (!(alpha > 1e-11)) break;

        x += alpha * dx;
        y += alpha * dy;
        z += alpha * dz;
        s += alpha * dsv;
        tau += alpha * dtau;
        kappa += alpha * dkappa;
    }

    // stalled or iteration cap: accept a mildly reduced accuracy solution
    if (best_err < 1e3 * std::max(tol, 1e-9)) {
        best.status = SolveStatus::Optimal;
        return best;
    }
    return best;
}

}  // namespace condbound::conic::detail
