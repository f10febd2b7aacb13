#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "quartic_zeta/fq_poly.hpp"
#include "quartic_zeta/intpoly.hpp"
#include "quartic_zeta/precision.hpp"
#include "quartic_zeta/zq.hpp"

namespace quartic_zeta {

// y^4 + g(x) y^2 + h(x) = 0 over F_q, deg g <= 2, deg h <= 4.
struct CurveInput {
    FieldContextPtr ctx;
    std::array<fq_elem, 3> gbar;  // a0, a1, a2
    std::array<fq_elem, 5> hbar;  // b0 .. b4
};

enum class CurveCase : int {
    case1 = 1,  // b4 = 0, a2 = 0
    case2 = 2,  // b4 = 0, a2 != 0
    case3 = 3,  // b4 != 0, a2^2 - 4 b4 = 0
    case4 = 4,  // b4 != 0, a2^2 - 4 b4 != 0
};

inline CurveCase classify(const CurveInput& in) {
    const auto& F = *in.ctx;
    bool b4_zero = fq_is_zero(in.hbar[4]);
    if (b4_zero) return fq_is_zero(in.gbar[2]) ? CurveCase::case1 : CurveCase::case2;
    fq_elem disc = fq_sub(F, fq_mul(F, in.gbar[2], in.gbar[2]),
                          fq_scalar_mul(F, 4, in.hbar[4]));
    return fq_is_zero(disc) ? CurveCase::case3 : CurveCase::case4;
}

// Geometry of the points at infinity of C and of the quotient E:
// phi(w) = w^4 + a2 w^2 + b4 cuts out infinity of C, psi(w) = w^2 + a2 w + b4
// infinity of E. R_C and R_E are the Frobenius-orbit boundary factors
// prod_orbits(X^|O| - q^|O|) / (X - q).
struct InfinityData {
    poly<FqField> phi, psi;
    int delta_C = 0, delta_E = 0;
    std::vector<int> orbits_C, orbits_E;
    ipoly R_C, R_E;
};

inline ipoly orbit_correction(const std::vector<int>& orbits, const mpz_class& q) {
    ipoly r{1};
    for (int s : orbits) {
        ipoly f(s + 1);
        mpz_class qs;
        mpz_pow_ui(qs.get_mpz_t(), q.get_mpz_t(), (unsigned long)s);
        f[0] = -qs;
        f[s] = 1;
        r = ipoly_mul(r, f);
    }
    ipoly xq{-q, 1};
    return ipoly_divexact_monic(std::move(r), xq, "orbit product not divisible by X - q");
}

inline InfinityData infinity_data(const CurveInput& in) {
    FqField K{in.ctx};
    const auto& F = *in.ctx;
    InfinityData d;
    d.phi = poly<FqField>{in.hbar[4], fq_zero(F), in.gbar[2], fq_zero(F), fq_one(F)};
    d.psi = poly<FqField>{in.hbar[4], in.gbar[2], fq_one(F)};
    poly_trim(K, d.phi);
    poly_trim(K, d.psi);
    d.orbits_C = poly_orbit_sizes(K, d.phi);
    d.orbits_E = poly_orbit_sizes(K, d.psi);
    for (int s : d.orbits_C) d.delta_C += s;
    for (int s : d.orbits_E) d.delta_E += s;
    mpz_class q;
    mpz_ui_pow_ui(q.get_mpz_t(), (unsigned long)F.p, (unsigned long)F.n);
    d.R_C = orbit_correction(d.orbits_C, q);
    d.R_E = orbit_correction(d.orbits_E, q);
    return d;
}

namespace detail {

// bivariate polynomial as rows by y-degree, each row a poly in x over F_q
using biv = std::vector<poly<FqField>>;

inline biv curve_f(const FqField& K, const CurveInput& in) {
    biv f(5);
    f[0] = poly<FqField>(in.hbar.begin(), in.hbar.end());
    f[2] = poly<FqField>(in.gbar.begin(), in.gbar.end());
    f[4] = {K.one()};
    poly_trim(K, f[0]);
    poly_trim(K, f[2]);
    return f;
}

inline biv curve_fx(const FqField& K, const CurveInput& in) {
    biv f(5);
    f[0] = poly_derivative(K, poly<FqField>(in.hbar.begin(), in.hbar.end()));
    f[2] = poly_derivative(K, poly<FqField>(in.gbar.begin(), in.gbar.end()));
    return f;
}

inline biv curve_fy(const FqField& K, const CurveInput& in) {
    biv f(4);
    f[1] = poly_scalar_mul(K, K.from_int(2), poly<FqField>(in.gbar.begin(), in.gbar.end()));
    f[3] = {K.from_int(4)};
    return f;
}

inline int biv_ydeg(const biv& f) {
    for (int i = (int)f.size(); i-- > 0;)
        if (!f[i].empty()) return i;
    return -1;
}

// Res_y via fraction-free (Bareiss) elimination of the Sylvester matrix over
// F_q[x]; the matrices are at most 7x7.
inline poly<FqField> resultant_y(const FqField& K, const biv& A, const biv& B) {
    int da = biv_ydeg(A), db = biv_ydeg(B);
    if (db < 0) return {};                                       // res(A, 0) = 0
    if (da < 0) return {};
    if (da == 0 && db == 0) return {K.one()};
    if (db == 0) {
        // res = B0^da
        poly<FqField> r{K.one()};
        for (int i = 0; i < da; ++i) r = poly_mul(K, r, B[0]);
        return r;
    }
    int m = da + db;
    std::vector<std::vector<poly<FqField>>> M(m, std::vector<poly<FqField>>(m));
    for (int r = 0; r < db; ++r)
        for (int c = 0; c <= da; ++c) M[r][r + c] = A[da - c];
    for (int r = 0; r < da; ++r)
        for (int c = 0; c <= db; ++c) M[db + r][r + c] = B[db - c];
    int sign = 1;
    poly<FqField> denom{K.one()};
    for (int k = 0; k + 1 < m; ++k) {
        if (M[k][k].empty()) {
            int s = -1;
            for (int i = k + 1; i < m; ++i)
                if (!M[i][k].empty()) {
                    s = i;
                    break;
                }
            if (s < 0) return {};  // det = 0
            std::swap(M[k], M[s]);
            sign = -sign;
        }
        for (int i = k + 1; i < m; ++i)
            for (int j = k + 1; j < m; ++j) {
                poly<FqField> t = poly_sub(K, poly_mul(K, M[k][k], M[i][j]),
                                           poly_mul(K, M[i][k], M[k][j]));
                if (poly_deg(denom) > 0 || !K.eq(denom[0], K.one())) {
                    poly<FqField> quo;
                    poly_divmod(K, t, denom, &quo);
                    t = std::move(quo);
                }
                M[i][j] = std::move(t);
            }
        for (int i = k + 1; i < m; ++i) M[i][k] = {};
        denom = M[k][k];
    }
    poly<FqField> det = M[m - 1][m - 1];
    if (sign < 0) det = poly_sub(K, {}, det);
    return det;
}

}  // namespace detail

// nullopt = smooth; otherwise a description of the failed condition or the
// witness locus.
inline std::optional<std::string> check_smoothness(const CurveInput& in) {
    FqField K{in.ctx};
    CurveCase tag = classify(in);

    // (i) conditions at infinity
    if (tag == CurveCase::case1 || tag == CurveCase::case2) {
        if (fq_is_zero(in.hbar[3]))
            return "singular at infinity: condition b3 != 0 fails";
    }
    if (tag == CurveCase::case3) {
        fq_elem c = fq_sub(*in.ctx, fq_mul(*in.ctx, in.gbar[1], in.gbar[2]),
                           fq_scalar_mul(*in.ctx, 2, in.hbar[3]));
        if (fq_is_zero(c))
            return "singular at infinity: condition a1*a2 - 2*b3 != 0 fails";
    }

    // (ii) affine chart: f = f_x = f_y = 0 has no solution over the closure
    detail::biv f = detail::curve_f(K, in);
    detail::biv fx = detail::curve_fx(K, in);
    detail::biv fy = detail::curve_fy(K, in);
    poly<FqField> r2 = detail::resultant_y(K, f, fy);
    if (poly_is_zero(r2)) return "affine curve is inseparable (disc_y f = 0)";
    poly<FqField> r1 = detail::resultant_y(K, f, fx);
    poly<FqField> G = poly_is_zero(r1) ? r2 : poly_gcd(K, r1, r2);
    if (poly_deg(G) <= 0) return std::nullopt;

    for (const auto& pi : poly_distinct_irreducible_factors(K, G)) {
        using Tower = QuotientField<FqField>;
        Tower T{K, pi};
        // x0 = class of x, a root of pi in the tower
        Tower::elem x0 = (poly_deg(pi) == 1) ? T.embed(K.neg(pi[0]))
                                             : Tower::elem{K.zero(), K.one()};
        auto lift = [&](const detail::biv& A) {
            poly<Tower> r;
            for (const auto& row : A) {
                poly<Tower> xpoly;
                for (const auto& cf : row) xpoly.push_back(T.embed(cf));
                poly_trim(T, xpoly);
                r.push_back(poly_eval(T, xpoly, x0));
            }
            poly_trim(T, r);
            return r;
        };
        poly<Tower> fT = lift(f), fxT = lift(fx), fyT = lift(fy);
        poly<Tower> g = poly_gcd(T, poly_gcd(T, fT, fxT), fyT);
        if (poly_deg(g) >= 1)
            return "singular point over extension of degree " +
                   std::to_string(poly_deg(pi) * in.ctx->n) + " (common root of f, f_x, f_y)";
    }
    return std::nullopt;
}

// Teichmuller-lifted curve at the reduction-matrix precision N5.
struct LiftedCurve {
    FieldContextPtr ctx;
    CurveCase tag = CurveCase::case1;
    InfinityData inf;
    int prec = 0;                // N5
    std::array<zq_elem, 3> a;    // lifts of gbar
    std::array<zq_elem, 5> b;    // lifts of hbar
    CurveInput input;
};

inline LiftedCurve lift_curve(const CurveInput& in, const PrecisionProfile& profile) {
    auto smooth = check_smoothness(in);
    if (smooth) throw singular_curve_error(*smooth);

    LiftedCurve L;
    L.ctx = in.ctx;
    L.tag = classify(in);
    L.inf = infinity_data(in);
    L.prec = profile.N5;
    L.input = in;
    ZqRing R(in.ctx, profile.N5);
    for (int i = 0; i < 3; ++i) L.a[i] = R.teichmuller(in.gbar[i]);
    for (int j = 0; j < 5; ++j) L.b[j] = R.teichmuller(in.hbar[j]);
    if (L.tag == CurveCase::case3) {
        // force a2^2 - 4 b4 = 0 exactly: b4 := a2^2 / 4 (a unit lifting b4bar)
        zq_elem a2sq = R.mul(L.a[2], L.a[2]);
        L.b[4] = R.div(a2sq, R.from_int(4));
    }
    return L;
}

// case-wise (delta_C, delta_E) table from the classification
inline std::pair<int, int> expected_deltas(CurveCase tag) {
    switch (tag) {
        case CurveCase::case1: return {1, 1};
        case CurveCase::case2: return {3, 2};
        case CurveCase::case3: return {2, 1};
        default: return {4, 2};
    }
}

}  // namespace quartic_zeta
