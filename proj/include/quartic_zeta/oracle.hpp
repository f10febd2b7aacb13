#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "quartic_zeta/curve.hpp"
#include "quartic_zeta/extension.hpp"
#include "quartic_zeta/intpoly.hpp"

namespace quartic_zeta {

// Ground-truth point counting by exhaustive enumeration over F_{q^r},
// desk scale only.

inline constexpr int kOracleMaxBits = 25;  // q^r <= 2^25 elements

namespace detail {

inline void check_budget(const FieldContext& F, int r) {
    double bits = (double)F.n * r * std::log2((double)F.p);
    if (bits > kOracleMaxBits) throw budget_error("enumeration budget exceeded");
}

struct SqrtTable {
    std::vector<std::uint8_t> count;  // #{y : y^2 = z}
    std::vector<std::uint32_t> root;  // one such y (valid when count > 0)
};

inline SqrtTable build_sqrt_table(const FieldContext& F) {
    uint64_t Q = F.q();
    SqrtTable t;
    t.count.assign(Q, 0);
    t.root.assign(Q, 0);
    for (uint64_t yi = 0; yi < Q; ++yi) {
        fq_elem y = fq_from_index(F, yi);
        uint64_t zi = fq_index(F, fq_mul(F, y, y));
        ++t.count[zi];
        t.root[zi] = (std::uint32_t)yi;
    }
    return t;
}

// #{y in F : y^2 + A y + B = 0} weighted by the number of y-preimages; used
// with the substitution z = y^2 for the quartic and directly for E.
inline int quadratic_root_count(const FieldContext& F, const SqrtTable& t,
                                const fq_elem& A, const fq_elem& B) {
    fq_elem D = fq_sub(F, fq_mul(F, A, A), fq_scalar_mul(F, 4, B));
    if (fq_is_zero(D)) return 1;
    return t.count[fq_index(F, D)] ? 2 : 0;
}

}  // namespace detail

// Exact #C(F_{q^r}) of the smooth projective plane quartic
// Y^4 + G(X,Z) Y^2 + H(X,Z): affine chart plus the roots of phi at infinity.
inline long long count_C(const CurveInput& in, int r) {
    detail::check_budget(*in.ctx, r);
    FieldEmbedding E = extension_field(in.ctx, r);
    const FieldContext& F = *E.dst;
    uint64_t Q = F.q();
    detail::SqrtTable tab = detail::build_sqrt_table(F);

    std::vector<fq_elem> g(3), h(5);
    for (int i = 0; i < 3; ++i) g[i] = E.map(in.gbar[i]);
    for (int j = 0; j < 5; ++j) h[j] = E.map(in.hbar[j]);
    fq_elem inv2 = fq_inv(F, fq_from_int(F, 2));

    long long count = 0;
    for (uint64_t xi = 0; xi < Q; ++xi) {
        fq_elem x = fq_from_index(F, xi);
        fq_elem A = fq_add(F, fq_mul(F, fq_add(F, fq_mul(F, g[2], x), g[1]), x), g[0]);
        fq_elem B = h[4];
        for (int j = 3; j >= 0; --j) B = fq_add(F, fq_mul(F, B, x), h[j]);
        // y^4 + A y^2 + B = 0: solve z^2 + A z + B = 0, then y^2 = z
        fq_elem D = fq_sub(F, fq_mul(F, A, A), fq_scalar_mul(F, 4, B));
        if (fq_is_zero(D)) {
            fq_elem z = fq_mul(F, fq_neg(F, A), inv2);
            count += tab.count[fq_index(F, z)];
        } else if (tab.count[fq_index(F, D)]) {
            fq_elem sD = fq_from_index(F, tab.root[fq_index(F, D)]);
            fq_elem zp = fq_mul(F, fq_add(F, fq_neg(F, A), sD), inv2);
            fq_elem zm = fq_mul(F, fq_sub(F, fq_neg(F, A), sD), inv2);
            count += tab.count[fq_index(F, zp)] + tab.count[fq_index(F, zm)];
        }
    }
    // infinity: roots of phi(w) = w^4 + a2 w^2 + b4; (0:1:0) is never on C
    for (uint64_t wi = 0; wi < Q; ++wi) {
        fq_elem w = fq_from_index(F, wi);
        fq_elem w2 = fq_mul(F, w, w);
        fq_elem v = fq_add(F, fq_add(F, fq_mul(F, w2, w2), fq_mul(F, g[2], w2)), h[4]);
        if (fq_is_zero(v)) ++count;
    }
    return count;
}

// Exact #E(F_{q^r}) of the smooth projective model of v^2 + g(u) v + h(u) = 0.
inline long long count_E(const CurveInput& in, int r) {
    detail::check_budget(*in.ctx, r);
    FieldEmbedding E = extension_field(in.ctx, r);
    const FieldContext& F = *E.dst;
    uint64_t Q = F.q();
    detail::SqrtTable tab = detail::build_sqrt_table(F);

    std::vector<fq_elem> g(3), h(5);
    for (int i = 0; i < 3; ++i) g[i] = E.map(in.gbar[i]);
    for (int j = 0; j < 5; ++j) h[j] = E.map(in.hbar[j]);

    long long count = 0;
    for (uint64_t ui = 0; ui < Q; ++ui) {
        fq_elem u = fq_from_index(F, ui);
        fq_elem A = fq_add(F, fq_mul(F, fq_add(F, fq_mul(F, g[2], u), g[1]), u), g[0]);
        fq_elem B = h[4];
        for (int j = 3; j >= 0; --j) B = fq_add(F, fq_mul(F, B, u), h[j]);
        count += detail::quadratic_root_count(F, tab, A, B);
    }
    // infinity via psi(w) = w^2 + a2 w + b4: rational roots when squarefree,
    // one rational point when psi is a square (delta_E = 1 cases)
    fq_elem disc = fq_sub(F, fq_mul(F, g[2], g[2]), fq_scalar_mul(F, 4, h[4]));
    if (fq_is_zero(disc)) {
        count += 1;
    } else {
        for (uint64_t wi = 0; wi < Q; ++wi) {
            fq_elem w = fq_from_index(F, wi);
            fq_elem v = fq_add(F, fq_add(F, fq_mul(F, w, w), fq_mul(F, g[2], w)), h[4]);
            if (fq_is_zero(v)) ++count;
        }
    }
    return count;
}

// Naive projective triple-scan over representatives of P^2(F_q); retained as
// a self-check of count_C on tiny fields.
inline long long count_C_projective_naive(const CurveInput& in) {
    const FieldContext& F = *in.ctx;
    uint64_t Q = F.q();
    if (Q > 4096) throw budget_error("naive projective scan is for tiny fields");
    auto evalF = [&](const fq_elem& X, const fq_elem& Y, const fq_elem& Z) {
        // F = Y^4 + G(X,Z) Y^2 + H(X,Z)
        fq_elem G = fq_zero(F), H = fq_zero(F);
        fq_elem Xp = fq_one(F);
        for (int i = 0; i <= 2; ++i) {
            fq_elem Zp = fq_one(F);
            for (int k = 0; k < 2 - i; ++k) Zp = fq_mul(F, Zp, Z);
            G = fq_add(F, G, fq_mul(F, in.gbar[i], fq_mul(F, Xp, Zp)));
            Xp = fq_mul(F, Xp, X);
        }
        Xp = fq_one(F);
        for (int j = 0; j <= 4; ++j) {
            fq_elem Zp = fq_one(F);
            for (int k = 0; k < 4 - j; ++k) Zp = fq_mul(F, Zp, Z);
            H = fq_add(F, H, fq_mul(F, in.hbar[j], fq_mul(F, Xp, Zp)));
            Xp = fq_mul(F, Xp, X);
        }
        fq_elem Y2 = fq_mul(F, Y, Y);
        return fq_add(F, fq_add(F, fq_mul(F, Y2, Y2), fq_mul(F, G, Y2)), H);
    };
    long long count = 0;
    for (uint64_t yi = 0; yi < Q; ++yi)
        for (uint64_t zi = 0; zi < Q; ++zi)
            if (fq_is_zero(evalF(fq_one(F), fq_from_index(F, yi), fq_from_index(F, zi))))
                ++count;
    for (uint64_t zi = 0; zi < Q; ++zi)
        if (fq_is_zero(evalF(fq_zero(F), fq_one(F), fq_from_index(F, zi)))) ++count;
    if (fq_is_zero(evalF(fq_zero(F), fq_zero(F), fq_one(F)))) ++count;
    return count;
}

// Newton's identities on a monic integer polynomial (ascending coefficients):
// returns s_1..s_R for the root power sums.
inline std::vector<mpz_class> power_sums(const ipoly& P, int R) {
    int d = (int)P.size() - 1;
    std::vector<mpz_class> e(d + 1);  // signed elementary: P = sum (-1)^i e_i X^(d-i)
    for (int i = 0; i <= d; ++i) {
        e[i] = P[d - i];
        if (i % 2) e[i] = -e[i];
    }
    std::vector<mpz_class> s(R + 1);
    for (int r = 1; r <= R; ++r) {
        mpz_class acc = 0;
        for (int i = 1; i < r && i <= d; ++i) {
            mpz_class t = e[i] * s[r - i];
            acc += (i % 2) ? t : -t;
        }
        if (r <= d) acc += (r % 2) ? mpz_class(r * e[r]) : mpz_class(-r * e[r]);
        s[r] = acc;
    }
    return s;
}

// #C(F_{q^r}) = q^r + 1 - s_r for the Weil polynomial P.
inline long long weil_count(const ipoly& P, const mpz_class& q, int r) {
    std::vector<mpz_class> s = power_sums(P, r);
    mpz_class qr;
    mpz_pow_ui(qr.get_mpz_t(), q.get_mpz_t(), (unsigned long)r);
    mpz_class c = qr + 1 - s[r];
    return (long long)mpz_get_si(c.get_mpz_t());
}

// Invert the fixed point formula: three counts determine the Weil sextic via
// Newton's identities plus the functional equation.
inline ipoly zeta_from_counts(const std::vector<long long>& counts, const mpz_class& q) {
    if (counts.size() < 3) throw parse_error("zeta_from_counts needs counts for r = 1..3");
    std::vector<mpz_class> s(4);
    for (int r = 1; r <= 3; ++r) {
        mpz_class qr;
        mpz_pow_ui(qr.get_mpz_t(), q.get_mpz_t(), (unsigned long)r);
        s[r] = qr + 1 - mpz_class((long)counts[r - 1]);
    }
    mpz_class e1 = s[1];
    mpz_class t2 = e1 * s[1] - s[2];
    if (!mpz_divisible_ui_p(t2.get_mpz_t(), 2)) throw assumption_error("Newton identity e2 not integral");
    mpz_class e2 = t2 / 2;
    mpz_class t3 = s[3] - e1 * s[2] + e2 * s[1];
    if (!mpz_divisible_ui_p(t3.get_mpz_t(), 3)) throw assumption_error("Newton identity e3 not integral");
    mpz_class e3 = t3 / 3;
    ipoly P(7);
    P[6] = 1;
    P[5] = -e1;
    P[4] = e2;
    P[3] = -e3;
    P[2] = q * e2;
    P[1] = -(q * q * e1);
    P[0] = q * q * q;
    return P;
}

}  // namespace quartic_zeta
