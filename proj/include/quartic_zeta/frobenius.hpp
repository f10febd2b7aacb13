#pragma once

#include <utility>
#include <vector>

#include "quartic_zeta/algebra.hpp"
#include "quartic_zeta/curve.hpp"
#include "quartic_zeta/precision.hpp"
#include "quartic_zeta/reduction.hpp"

namespace quartic_zeta {

// alpha f_y + beta f_x = 1 in F_q[x,y]/(f), total degrees <= 5, alpha odd
// and beta even in y. Rows indexed by y-degree, entries polys in x.
struct BezoutPair {
    std::vector<poly<FqField>> alpha, beta;
};

namespace detail {

inline std::vector<std::pair<int, int>> monomials_leq(int d) {
    std::vector<std::pair<int, int>> v;  // (ydeg, xdeg)
    for (int i = 0; i <= d; ++i)
        for (int j = 0; i + j <= d; ++j) v.emplace_back(i, j);
    return v;
}

// reduce deg_y via the monic-in-y curve polynomial
inline void biv_reduce_y(const FqField& K, std::vector<poly<FqField>>& rows, const biv& f) {
    for (int i = (int)rows.size(); i-- > 4;) {
        poly<FqField> c = rows[i];
        if (poly_is_zero(c)) continue;
        rows[i] = {};
        // y^i = y^(i-4) * (-g y^2 - h)
        rows[i - 2] = poly_sub(K, rows[i - 2], poly_mul(K, c, f[2]));
        rows[i - 4] = poly_sub(K, rows[i - 4], poly_mul(K, c, f[0]));
    }
}

}  // namespace detail

// Solve g0 f + alpha f_y + beta f_x = 1 as polynomials over F_q (the lift of
// Frobenius only needs the identity mod p), then parity-symmetrize.
inline BezoutPair solve_bezout(const CurveInput& in) {
    FqField K{in.ctx};
    const FieldContext& F = *in.ctx;
    detail::biv f = detail::curve_f(K, in);
    detail::biv fx = detail::curve_fx(K, in);
    detail::biv fy = detail::curve_fy(K, in);

    auto eqs = detail::monomials_leq(8);
    auto m4 = detail::monomials_leq(4);
    auto m5 = detail::monomials_leq(5);
    const int rows = (int)eqs.size();
    const int cols = (int)(m4.size() + 2 * m5.size());
    auto eq_index = [&](int i, int j) {
        for (size_t t = 0; t < eqs.size(); ++t)
            if (eqs[t].first == i && eqs[t].second == j) return (int)t;
        return -1;
    };

    std::vector<std::vector<fq_elem>> M(rows, std::vector<fq_elem>(cols + 1, fq_zero(F)));
    auto scatter = [&](int colbase, const std::vector<std::pair<int, int>>& mono,
                       const detail::biv& poly3) {
        for (size_t u = 0; u < mono.size(); ++u) {
            auto [iy, jx] = mono[u];
            for (size_t pi = 0; pi < poly3.size(); ++pi)
                for (size_t pj = 0; pj < poly3[pi].size(); ++pj) {
                    if (fq_is_zero(poly3[pi][pj])) continue;
                    int r = eq_index((int)(iy + pi), (int)(jx + pj));
                    if (r < 0) continue;
                    M[r][colbase + (int)u] =
                        fq_add(F, M[r][colbase + (int)u], poly3[pi][pj]);
                }
        }
    };
    scatter(0, m4, f);
    scatter((int)m4.size(), m5, fy);
    scatter((int)(m4.size() + m5.size()), m5, fx);
    M[eq_index(0, 0)][cols] = fq_one(F);

    // Gaussian elimination to reduced row echelon form
    std::vector<int> pivot_of_row(rows, -1);
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (!fq_is_zero(M[i][c])) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(M[r], M[pr]);
        fq_elem inv = fq_inv(F, M[r][c]);
        for (int j = c; j <= cols; ++j) M[r][j] = fq_mul(F, M[r][j], inv);
        for (int i = 0; i < rows; ++i) {
            if (i == r || fq_is_zero(M[i][c])) continue;
            fq_elem fct = M[i][c];
            for (int j = c; j <= cols; ++j)
                M[i][j] = fq_sub(F, M[i][j], fq_mul(F, fct, M[r][j]));
        }
        pivot_of_row[r] = c;
        ++r;
    }
    for (int i = r; i < rows; ++i)
        if (!fq_is_zero(M[i][cols]))
            throw assumption_error("Bezout infeasible: smoothness precondition violated");

    std::vector<fq_elem> sol(cols, fq_zero(F));
    for (int i = 0; i < r; ++i)
        if (pivot_of_row[i] >= 0) sol[pivot_of_row[i]] = M[i][cols];

    BezoutPair out;
    out.alpha.assign(6, {});
    out.beta.assign(6, {});
    auto gather = [&](int colbase, const std::vector<std::pair<int, int>>& mono,
                      std::vector<poly<FqField>>& rows6) {
        for (size_t u = 0; u < mono.size(); ++u) {
            auto [iy, jx] = mono[u];
            const fq_elem& c = sol[colbase + (int)u];
            if (fq_is_zero(c)) continue;
            if ((int)rows6[iy].size() <= jx) rows6[iy].resize(jx + 1, fq_zero(F));
            rows6[iy][jx] = fq_add(F, rows6[iy][jx], c);
        }
        for (auto& row : rows6) poly_trim(K, row);
    };
    gather((int)m4.size(), m5, out.alpha);
    gather((int)(m4.size() + m5.size()), m5, out.beta);

    // parity symmetrization: f_y is odd and f_x even in y
    for (int i = 0; i < 6; i += 2) out.alpha[i] = {};
    for (int i = 1; i < 6; i += 2) out.beta[i] = {};

    // verify alpha f_y + beta f_x = 1 in F_q[x,y]/(f)
    std::vector<poly<FqField>> acc(12);
    auto accumulate = [&](const std::vector<poly<FqField>>& u, const detail::biv& v) {
        for (size_t i = 0; i < u.size(); ++i) {
            if (poly_is_zero(u[i])) continue;
            for (size_t j = 0; j < v.size(); ++j) {
                if (poly_is_zero(v[j])) continue;
                acc[i + j] = poly_add(K, acc[i + j], poly_mul(K, u[i], v[j]));
            }
        }
    };
    accumulate(out.alpha, fy);
    accumulate(out.beta, fx);
    detail::biv_reduce_y(K, acc, f);
    bool ok = acc[0].size() == 1 && K.eq(acc[0][0], K.one());
    for (int i = 1; i < 12 && ok; ++i) ok = poly_is_zero(acc[i]);
    if (!ok) throw assumption_error("Bezout verification failed");
    return out;
}

// The computed Frobenius lift data: delta_x = beta^p, delta_y = alpha^p,
// the Hensel solution Z0 of f^sigma(x^p + delta_x Z, y^p + delta_y Z) = 0,
// the images Fx, Fy with power caches, and dFx.
struct FrobeniusData {
    AlgebraRing ring;  // at precision (x^N3, p^N4)
    AlgebraElement delta_x, delta_y;
    AlgebraElement Z0;
    AlgebraElement Fx, Fy, Fx2, Fy2, Fy3;
    AlgebraForm dFx;
    long p = 0;
};

namespace detail {

// canonical lift of a deg<=5 bivariate over F_q into the algebra
inline AlgebraElement lift_biv(const AlgebraRing& A, const std::vector<poly<FqField>>& rows) {
    const ZqRing& R = A.zq();
    AlgebraElement low = A.zero(), high = A.zero();
    bool has_high = false;
    for (int i = 0; i < (int)rows.size(); ++i)
        for (int j = 0; j < (int)rows[i].size(); ++j) {
            if (fq_is_zero(rows[i][j])) continue;
            if (i <= 3) {
                A.set_coeff(low, i, j, R.from_fq(rows[i][j]));
            } else {
                A.set_coeff(high, i - 4, j, R.from_fq(rows[i][j]));
                has_high = true;
            }
        }
    if (!has_high) return low;
    AlgebraElement y4 = A.pow(A.monomial(1, 0, R.one()), 4);
    return A.add(low, A.mul(high, y4));
}

}  // namespace detail

inline FrobeniusData build_frobenius(const LiftedCurve& C, const BezoutPair& bez,
                                     const PrecisionProfile& prof) {
    const long p = C.ctx->p;
    AlgebraRing ring = AlgebraRing::for_curve(C, prof.N4, prof.N3);
    const ZqRing& R = ring.zq();

    AlgebraElement delta_y = ring.pow(detail::lift_biv(ring, bez.alpha), p);
    AlgebraElement delta_x = ring.pow(detail::lift_biv(ring, bez.beta), p);
    AlgebraElement xp = ring.monomial(0, (int)p, R.one());
    AlgebraElement yp = ring.pow(ring.monomial(1, 0, R.one()), p);

    // f^sigma coefficient scalars
    std::vector<zq_elem> gs(3), hs(5), gps(3), hps(5);
    for (int i = 0; i < 3; ++i) {
        zq_elem c = C.a[i];
        R.reduce(c);
        gs[i] = R.sigma(c);
    }
    for (int j = 0; j < 5; ++j) {
        zq_elem c = C.b[j];
        R.reduce(c);
        hs[j] = R.sigma(c);
    }
    for (int i = 1; i < 3; ++i) gps[i - 1] = R.scalar_mul(mpz_class((long)i), gs[i]);
    gps[2] = R.zero();
    for (int j = 1; j < 5; ++j) hps[j - 1] = R.scalar_mul(mpz_class((long)j), hs[j]);
    hps[4] = R.zero();

    // Hensel iteration with reciprocal maintenance, unit precision doubling
    std::vector<int> ladder;
    for (int v = 2; v < prof.N4; v *= 2) ladder.push_back(v);
    ladder.push_back(prof.N4);
    ladder.push_back(prof.N4);  // one settling round at full precision

    AlgebraElement Z, W;
    int prev = 0;
    for (int v : ladder) {
        AlgebraRing Av = (v == prof.N4) ? ring : AlgebraRing::for_curve(C, v, prof.N3);
        const ZqRing& Rv = Av.zq();
        if (prev == 0) {
            Z = Av.zero();
            W = Av.one();
        } else {
            Z = ring.to_ring(Av, Z);
            W = ring.to_ring(Av, W);
        }
        auto redv = [&](const zq_elem& c) {
            zq_elem r = c;
            Rv.reduce(r);
            return r;
        };
        std::vector<zq_elem> gv(3), hv(5), gpv(3), hpv(5);
        for (int i = 0; i < 3; ++i) gv[i] = redv(gs[i]);
        for (int j = 0; j < 5; ++j) hv[j] = redv(hs[j]);
        for (int i = 0; i < 3; ++i) gpv[i] = redv(gps[i]);
        for (int j = 0; j < 5; ++j) hpv[j] = redv(hps[j]);
        AlgebraElement dxv = ring.to_ring(Av, delta_x);
        AlgebraElement dyv = ring.to_ring(Av, delta_y);
        AlgebraElement xpv = ring.to_ring(Av, xp);
        AlgebraElement ypv = ring.to_ring(Av, yp);

        AlgebraElement Ax = Av.add(xpv, Av.mul(dxv, Z));
        AlgebraElement Ay = Av.add(ypv, Av.mul(dyv, Z));
        AlgebraElement Ax2 = Av.mul(Ax, Ax);
        AlgebraElement Ay2 = Av.mul(Ay, Ay);
        AlgebraElement Ay3 = Av.mul(Ay2, Ay);
        AlgebraElement gAx = Av.eval_poly(gv, Ax, Ax2);
        AlgebraElement hAx = Av.eval_poly(hv, Ax, Ax2);
        AlgebraElement gpAx = Av.eval_poly(gpv, Ax, Ax2);
        AlgebraElement hpAx = Av.eval_poly(hpv, Ax, Ax2);
        AlgebraElement G = Av.add(Av.mul(Ay2, Av.add(Ay2, gAx)), hAx);
        AlgebraElement fX = Av.add(Av.mul(gpAx, Ay2), hpAx);
        AlgebraElement fY = Av.add(Av.scale_int(Ay3, 4), Av.scale_int(Av.mul(gAx, Ay), 2));
        AlgebraElement Gp = Av.add(Av.mul(fX, dxv), Av.mul(fY, dyv));
        // W <- W (2 - G'W); Z <- Z - G W
        AlgebraElement E = Av.sub(Av.scale_int(Av.one(), 2), Av.mul(Gp, W));
        W = Av.mul(W, E);
        Z = Av.sub(Z, Av.mul(G, W));
        Z = Av.to_ring(ring, Z);  // re-embed (values known mod p^v)
        W = Av.to_ring(ring, W);
        prev = v;
    }

    FrobeniusData D{std::move(ring), std::move(delta_x), std::move(delta_y),
                    AlgebraElement{}, AlgebraElement{}, AlgebraElement{},
                    AlgebraElement{}, AlgebraElement{}, AlgebraElement{},
                    AlgebraForm{}, p};
    D.Z0 = std::move(Z);

    // residual check: G(Z0) = 0 identically in the truncated quotient ring
    {
        const AlgebraRing& A = D.ring;
        AlgebraElement Ax = A.add(xp, A.mul(D.delta_x, D.Z0));
        AlgebraElement Ay = A.add(yp, A.mul(D.delta_y, D.Z0));
        AlgebraElement Ax2 = A.mul(Ax, Ax);
        AlgebraElement Ay2 = A.mul(Ay, Ay);
        AlgebraElement G =
            A.add(A.mul(Ay2, A.add(Ay2, A.eval_poly(gs, Ax, Ax2))), A.eval_poly(hs, Ax, Ax2));
        if (!G.is_zero())
            throw precision_error("Frobenius lift iteration did not converge");
        D.Fx = std::move(Ax);
        D.Fy = std::move(Ay);
        D.Fx2 = std::move(Ax2);
        D.Fy2 = std::move(Ay2);
    }
    D.Fy3 = D.ring.mul(D.Fy2, D.Fy);
    D.dFx = D.ring.total_differential(D.Fx);

    // tau-equivariance: Z0 and Fx even in y, Fy odd
    auto row_zero = [&](const AlgebraElement& e, int i) {
        for (const auto& c : e.rows[i])
            if (c != 0) return false;
        return true;
    };
    if (!row_zero(D.Z0, 1) || !row_zero(D.Z0, 3) || !row_zero(D.Fx, 1) || !row_zero(D.Fx, 3) ||
        !row_zero(D.Fy, 0) || !row_zero(D.Fy, 2))
        throw assumption_error("Frobenius lift does not commute with the involution");
    return D;
}

// F_p(x^k y^l dx) as a normalized dx-only scaled form.
inline ScaledForm frobenius_form(int k, int l, const FrobeniusData& D, const ScaledRing& S,
                                 const std::array<ZqScaled, 3>& gsc,
                                 const std::array<ZqScaled, 5>& hsc) {
    const AlgebraRing& A = D.ring;
    AlgebraElement P;
    switch (l) {
        case 1: P = D.Fy; break;
        case 2: P = D.Fy2; break;
        default: P = D.Fy3; break;
    }
    if (k == 1) P = A.mul(P, D.Fx);
    if (k == 2) P = A.mul(P, D.Fx2);
    AlgebraForm w{A.mul(P, D.dFx.A), A.mul(P, D.dFx.B)};
    ScaledForm out = normalize_to_dx(w, S, gsc, hsc);
    // the lift commutes with y -> -y, so rows of the opposite parity are
    // identically zero; verify and mark them exact
    for (int i = (l % 2 == 1) ? 0 : 1; i < 4; i += 2)
        for (auto& c : out.rows[i]) {
            if (!c.is_zeroish())
                throw assumption_error("pullback form violates the parity split");
            c = ZqScaled{};
        }
    return out;
}

// Convergence-rate checks: every stored coefficient of Z0 obeys
// 16p * ord > i + j, and of a pullback form 16p * (ord + 4) > i + j.
// Residues that vanish at working precision pass (their order is beyond it).
inline bool check_Z0_decay(const FrobeniusData& D) {
    const ZqRing& R = D.ring.zq();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < D.ring.xcut(); ++j) {
            zq_elem c = D.ring.coeff(D.Z0, i, j);
            if (R.is_zero(c)) continue;
            int v = R.valuation(c);
            if (16 * D.p * v <= i + j) return false;
        }
    return true;
}

inline bool check_form_decay(const ScaledForm& w, long p) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < w.xcut; ++j) {
            const ZqScaled& c = w.rows[i][j];
            if (c.is_zeroish()) continue;
            if (16 * p * (c.val + 4) <= i + j) return false;
        }
    return true;
}

}  // namespace quartic_zeta
