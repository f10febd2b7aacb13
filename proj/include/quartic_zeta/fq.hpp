#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "quartic_zeta/errors.hpp"
#include "quartic_zeta/smallprime.hpp"

namespace quartic_zeta {

using std::int64_t;
using std::uint64_t;

// An element of F_q = F_p[t]/(m), stored as n residues mod p (coefficient of
// t^i at index i).
using fq_elem = std::vector<int64_t>;

namespace detail {

// Minimal F_p[t] helpers used for modulus validation and search. Polynomials
// are coefficient vectors, lowest degree first, no trailing zeros.

inline void fp_trim(std::vector<int64_t>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// rem <- rem mod b (b nonzero); quotient written into q if requested
inline void fp_divmod(std::vector<int64_t>& rem, const std::vector<int64_t>& b, int64_t p,
                      std::vector<int64_t>* q = nullptr) {
    int64_t lead = inv_p(b.back(), p);
    if (q) q->assign(rem.size() >= b.size() ? rem.size() - b.size() + 1 : 1, 0);
    fp_trim(rem);
    while (rem.size() >= b.size()) {
        size_t shift = rem.size() - b.size();
        int64_t f = mul_p(rem.back(), lead, p);
        if (q) (*q)[shift] = f;
        for (size_t j = 0; j < b.size(); ++j)
            rem[shift + j] = mod_p(rem[shift + j] - f * b[j], p);
        rem.pop_back();
        fp_trim(rem);
    }
    if (q) fp_trim(*q);
}

inline std::vector<int64_t> fp_mulmod(const std::vector<int64_t>& a,
                                      const std::vector<int64_t>& b,
                                      const std::vector<int64_t>& m, int64_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<int64_t> c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    fp_divmod(c, m, p);
    return c;
}

inline std::vector<int64_t> fp_pth_power_mod(const std::vector<int64_t>& a,
                                             const std::vector<int64_t>& m, int64_t p) {
    std::vector<int64_t> r{1}, b = a;
    int64_t e = p;
    while (e) {
        if (e & 1) r = fp_mulmod(r, b, m, p);
        b = fp_mulmod(b, b, m, p);
        e >>= 1;
    }
    return r;
}

inline std::vector<int64_t> fp_gcd(std::vector<int64_t> a, std::vector<int64_t> b, int64_t p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        fp_divmod(a, b, p);
        std::swap(a, b);
    }
    return a;
}

inline bool fp_is_irreducible(const std::vector<int64_t>& m, int64_t p) {
    size_t d = m.size() - 1;
    if (d == 0) return false;
    if (d == 1) return true;
    // x^(p^d) == x mod m, and gcd(x^(p^(d/l)) - x, m) = 1 for prime l | d
    std::vector<int64_t> x{0, 1};
    std::vector<std::vector<int64_t>> frob(d + 1);  // frob[k] = x^(p^k) mod m
    frob[0] = x;
    for (size_t k = 1; k <= d; ++k) frob[k] = fp_pth_power_mod(frob[k - 1], m, p);
    if (frob[d] != x) return false;
    for (size_t l = 2; l <= d; ++l) {
        if (d % l || !is_prime_small((int64_t)l)) continue;
        std::vector<int64_t> g = frob[d / l];
        if (g.size() < 2) g.resize(2, 0);
        g[1] = sub_p(g[1], 1, p);
        fp_trim(g);
        if (fp_gcd(g, m, p).size() != 1) return false;
    }
    return true;
}

}  // namespace detail

// Fixed data for F_q = F_p[t]/(m). The p-adic layer lifts the same {0..p-1}
// coefficients as the modulus M of Z_q.
struct FieldContext {
    int64_t p = 0;
    int n = 0;
    std::vector<int64_t> modulus;  // length n+1, monic

    uint64_t q() const {
        uint64_t r = 1;
        for (int i = 0; i < n; ++i) {
            if (r > (uint64_t(1) << 62) / (uint64_t)p)
                throw budget_error("q = p^n exceeds the 64-bit desk-scale range");
            r *= (uint64_t)p;
        }
        return r;
    }
};

using FieldContextPtr = std::shared_ptr<const FieldContext>;

// Deterministic modulus search: smallest k >= 0 whose base-p digits c_i give
// an irreducible t^n + c_{n-1} t^{n-1} + ... + c_0.
inline std::vector<int64_t> find_irreducible(int64_t p, int n) {
    for (uint64_t k = 0;; ++k) {
        std::vector<int64_t> m(n + 1, 0);
        uint64_t kk = k;
        for (int i = 0; i < n; ++i) {
            m[i] = (int64_t)(kk % (uint64_t)p);
            kk /= (uint64_t)p;
        }
        if (kk) throw budget_error("no irreducible modulus found in range");
        m[n] = 1;
        if (detail::fp_is_irreducible(m, p)) return m;
    }
}

inline FieldContextPtr build_context(int64_t p, int n,
                                     const std::vector<int64_t>& modulus = {}) {
    if (p == 2) throw parse_error("characteristic 2 unsupported");
    if (p < 3 || !is_prime_small(p)) throw parse_error("p must be an odd prime");
    if (n < 1) throw parse_error("extension degree must be >= 1");
    auto ctx = std::make_shared<FieldContext>();
    ctx->p = p;
    ctx->n = n;
    if (modulus.empty()) {
        ctx->modulus = find_irreducible(p, n);
    } else {
        if ((int)modulus.size() != n + 1) throw parse_error("modulus must have degree n");
        std::vector<int64_t> m(modulus);
        for (auto& c : m) c = mod_p(c, p);
        if (m[n] != 1) throw parse_error("modulus must be monic");
        if (!detail::fp_is_irreducible(m, p)) throw parse_error("modulus is reducible over F_p");
        ctx->modulus = m;
    }
    return ctx;
}

inline fq_elem fq_zero(const FieldContext& F) { return fq_elem(F.n, 0); }

inline fq_elem fq_from_int(const FieldContext& F, int64_t c) {
    fq_elem a(F.n, 0);
    a[0] = mod_p(c, F.p);
    return a;
}

inline fq_elem fq_one(const FieldContext& F) { return fq_from_int(F, 1); }

inline bool fq_is_zero(const fq_elem& a) {
    for (auto c : a)
        if (c) return false;
    return true;
}

inline fq_elem fq_add(const FieldContext& F, const fq_elem& a, const fq_elem& b) {
    fq_elem r(F.n);
    for (int i = 0; i < F.n; ++i) r[i] = add_p(a[i], b[i], F.p);
    return r;
}

inline fq_elem fq_sub(const FieldContext& F, const fq_elem& a, const fq_elem& b) {
    fq_elem r(F.n);
    for (int i = 0; i < F.n; ++i) r[i] = sub_p(a[i], b[i], F.p);
    return r;
}

inline fq_elem fq_neg(const FieldContext& F, const fq_elem& a) {
    fq_elem r(F.n);
    for (int i = 0; i < F.n; ++i) r[i] = a[i] ? F.p - a[i] : 0;
    return r;
}

inline fq_elem fq_mul(const FieldContext& F, const fq_elem& a, const fq_elem& b) {
    const int n = F.n;
    if (n == 1) return fq_elem{mul_p(a[0], b[0], F.p)};
    std::vector<int64_t> c(2 * n - 1, 0);
    for (int i = 0; i < n; ++i) {
        if (!a[i]) continue;
        for (int j = 0; j < n; ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % F.p;
    }
    for (int i = 2 * n - 2; i >= n; --i) {
        int64_t f = c[i];
        if (!f) continue;
        for (int j = 0; j < n; ++j) c[i - n + j] = mod_p(c[i - n + j] - f * F.modulus[j], F.p);
    }
    c.resize(n);
    return c;
}

inline fq_elem fq_scalar_mul(const FieldContext& F, int64_t s, const fq_elem& a) {
    s = mod_p(s, F.p);
    fq_elem r(F.n);
    for (int i = 0; i < F.n; ++i) r[i] = mul_p(s, a[i], F.p);
    return r;
}

inline fq_elem fq_inv(const FieldContext& F, const fq_elem& a) {
    if (fq_is_zero(a)) throw precision_error("inversion of zero in F_q");
    if (F.n == 1) return fq_elem{inv_p(a[0], F.p)};
    // extended Euclid in F_p[t] between a and the modulus
    std::vector<int64_t> r0(F.modulus), r1(a), t0, t1{1};
    detail::fp_trim(r1);
    while (!r1.empty()) {
        std::vector<int64_t> q, rem(r0);
        detail::fp_divmod(rem, r1, F.p, &q);
        // t2 = t0 - q*t1
        std::vector<int64_t> t2(t0);
        if (!q.empty() && !t1.empty()) {
            t2.resize(std::max(t2.size(), q.size() + t1.size() - 1), 0);
            for (size_t i = 0; i < q.size(); ++i) {
                if (!q[i]) continue;
                for (size_t j = 0; j < t1.size(); ++j)
                    t2[i + j] = mod_p(t2[i + j] - q[i] * t1[j], F.p);
            }
            detail::fp_trim(t2);
        }
        r0 = r1;
        r1 = rem;
        t0 = t1;
        t1 = t2;
    }
    int64_t c = inv_p(r0[0], F.p);
    fq_elem out(F.n, 0);
    for (size_t i = 0; i < t0.size() && i < (size_t)F.n; ++i) out[i] = mul_p(t0[i], c, F.p);
    return out;
}

inline fq_elem fq_pow(const FieldContext& F, const fq_elem& a, const mpz_class& e) {
    if (e < 0) return fq_pow(F, fq_inv(F, a), mpz_class(-e));
    fq_elem r = fq_one(F), b = a;
    mpz_class m = e;
    while (m > 0) {
        if (mpz_odd_p(m.get_mpz_t())) r = fq_mul(F, r, b);
        b = fq_mul(F, b, b);
        m >>= 1;
    }
    return r;
}

inline fq_elem fq_pow(const FieldContext& F, const fq_elem& a, uint64_t e) {
    return fq_pow(F, a, mpz_class((unsigned long)e));
}

// a -> a^p, the absolute Frobenius of F_q.
inline fq_elem fq_frobenius(const FieldContext& F, const fq_elem& a) {
    return fq_pow(F, a, (uint64_t)F.p);
}

inline fq_elem fq_div(const FieldContext& F, const fq_elem& a, const fq_elem& b) {
    return fq_mul(F, a, fq_inv(F, b));
}

// Dense index of an element (base-p digits), used by oracle lookup tables.
inline uint64_t fq_index(const FieldContext& F, const fq_elem& a) {
    uint64_t r = 0;
    for (int i = F.n - 1; i >= 0; --i) r = r * (uint64_t)F.p + (uint64_t)a[i];
    return r;
}

inline fq_elem fq_from_index(const FieldContext& F, uint64_t idx) {
    fq_elem a(F.n);
    for (int i = 0; i < F.n; ++i) {
        a[i] = (int64_t)(idx % (uint64_t)F.p);
        idx /= (uint64_t)F.p;
    }
    return a;
}

inline std::string fq_to_string(const FieldContext& F, const fq_elem& a) {
    std::string s = "[";
    for (int i = 0; i < F.n; ++i) s += (i ? "," : "") + std::to_string(a[i]);
    return s + "]";
}

}  // namespace quartic_zeta
