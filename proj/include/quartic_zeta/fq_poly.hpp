#pragma once

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include "quartic_zeta/fq.hpp"

namespace quartic_zeta {

// Generic univariate polynomial layer over a field adapter K. An adapter
// provides: elem, zero(), one(), is_zero(e), eq(a,b), add, sub, neg, mul,
// inv, order() (field size as mpz), char_p(), random_elem(rng).
// Polynomials are vector<K::elem>, lowest degree first, trimmed.

struct FqField {
    FieldContextPtr ctx;

    using elem = fq_elem;
    elem zero() const { return fq_zero(*ctx); }
    elem one() const { return fq_one(*ctx); }
    bool is_zero(const elem& a) const { return fq_is_zero(a); }
    bool eq(const elem& a, const elem& b) const { return a == b; }
    elem add(const elem& a, const elem& b) const { return fq_add(*ctx, a, b); }
    elem sub(const elem& a, const elem& b) const { return fq_sub(*ctx, a, b); }
    elem neg(const elem& a) const { return fq_neg(*ctx, a); }
    elem mul(const elem& a, const elem& b) const { return fq_mul(*ctx, a, b); }
    elem inv(const elem& a) const { return fq_inv(*ctx, a); }
    elem from_int(int64_t c) const { return fq_from_int(*ctx, c); }
    int64_t char_p() const { return ctx->p; }
    mpz_class order() const {
        mpz_class q;
        mpz_ui_pow_ui(q.get_mpz_t(), (unsigned long)ctx->p, (unsigned long)ctx->n);
        return q;
    }
    template <class RNG>
    elem random_elem(RNG& rng) const {
        fq_elem a(ctx->n);
        for (int i = 0; i < ctx->n; ++i) a[i] = (int64_t)(rng() % (uint64_t)ctx->p);
        return a;
    }
};

template <class K>
using poly = std::vector<typename K::elem>;

template <class K>
void poly_trim(const K& F, poly<K>& a) {
    while (!a.empty() && F.is_zero(a.back())) a.pop_back();
}

template <class E>
int poly_deg(const std::vector<E>& a) {
    return (int)a.size() - 1;  // -1 for the zero polynomial
}

template <class E>
bool poly_is_zero(const std::vector<E>& a) {
    return a.empty();
}

template <class K>
poly<K> poly_from(const K& F, std::initializer_list<typename K::elem> cs) {
    poly<K> a(cs);
    poly_trim(F, a);
    return a;
}

template <class K>
poly<K> poly_add(const K& F, const poly<K>& a, const poly<K>& b) {
    poly<K> r(std::max(a.size(), b.size()), F.zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
    poly_trim(F, r);
    return r;
}

template <class K>
poly<K> poly_sub(const K& F, const poly<K>& a, const poly<K>& b) {
    poly<K> r(std::max(a.size(), b.size()), F.zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
    poly_trim(F, r);
    return r;
}

template <class K>
poly<K> poly_mul(const K& F, const poly<K>& a, const poly<K>& b) {
    if (a.empty() || b.empty()) return {};
    poly<K> r(a.size() + b.size() - 1, F.zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (F.is_zero(a[i])) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    poly_trim(F, r);
    return r;
}

template <class K>
poly<K> poly_scalar_mul(const K& F, const typename K::elem& s, const poly<K>& a) {
    poly<K> r(a.size(), F.zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = F.mul(s, a[i]);
    poly_trim(F, r);
    return r;
}

// rem <- rem mod b; quotient into q if requested. b nonzero.
template <class K>
void poly_divmod(const K& F, poly<K>& rem, const poly<K>& b, poly<K>* q = nullptr) {
    auto lead = F.inv(b.back());
    if (q) q->assign(rem.size() >= b.size() ? rem.size() - b.size() + 1 : 1, F.zero());
    poly_trim(F, rem);
    while (rem.size() >= b.size()) {
        size_t shift = rem.size() - b.size();
        auto f = F.mul(rem.back(), lead);
        if (q) (*q)[shift] = f;
        for (size_t j = 0; j < b.size(); ++j)
            rem[shift + j] = F.sub(rem[shift + j], F.mul(f, b[j]));
        rem.pop_back();
        poly_trim(F, rem);
    }
    if (q) poly_trim(F, *q);
}

template <class K>
poly<K> poly_mod(const K& F, poly<K> a, const poly<K>& b) {
    poly_divmod(F, a, b);
    return a;
}

template <class K>
poly<K> poly_make_monic(const K& F, const poly<K>& a) {
    if (a.empty()) return a;
    return poly_scalar_mul(F, F.inv(a.back()), a);
}

template <class K>
poly<K> poly_gcd(const K& F, poly<K> a, poly<K> b) {
    poly_trim(F, a);
    poly_trim(F, b);
    while (!b.empty()) {
        poly_divmod(F, a, b);
        std::swap(a, b);
    }
    if (!a.empty()) a = poly_make_monic(F, a);
    return a;
}

template <class K>
poly<K> poly_derivative(const K& F, const poly<K>& a) {
    if (a.size() <= 1) return {};
    poly<K> r(a.size() - 1, F.zero());
    for (size_t i = 1; i < a.size(); ++i)
        r[i - 1] = F.mul(F.from_int((int64_t)(i % (uint64_t)F.char_p())), a[i]);
    poly_trim(F, r);
    return r;
}

template <class K>
typename K::elem poly_eval(const K& F, const poly<K>& a, const typename K::elem& x) {
    auto r = F.zero();
    for (size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
    return r;
}

template <class K>
poly<K> poly_mulmod(const K& F, const poly<K>& a, const poly<K>& b, const poly<K>& m) {
    return poly_mod(F, poly_mul(F, a, b), m);
}

template <class K>
poly<K> poly_powmod(const K& F, poly<K> a, mpz_class e, const poly<K>& m) {
    poly<K> r{F.one()};
    a = poly_mod(F, std::move(a), m);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = poly_mulmod(F, r, a, m);
        a = poly_mulmod(F, a, a, m);
        e >>= 1;
    }
    return r;
}

// Squarefree part of a nonzero polynomial (product of its distinct
// irreducible factors), handling p-th power content.
template <class K>
poly<K> poly_squarefree_part(const K& F, const poly<K>& f0) {
    poly<K> f = poly_make_monic(F, f0);
    if (poly_deg(f) <= 1) return f;
    poly<K> d = poly_derivative(F, f);
    if (poly_is_zero(d)) {
        // f = g(x^p): take the p-th root and recurse
        int64_t p = F.char_p();
        mpz_class q = F.order(), e = q / p;  // c^(q/p) is the p-th root of c
        poly<K> g((f.size() - 1) / (size_t)p + 1, F.zero());
        for (size_t i = 0; i < g.size(); ++i) {
            // elem power via square-and-multiply
            auto c = f[i * (size_t)p];
            auto r = F.one();
            mpz_class m = e;
            auto b = c;
            while (m > 0) {
                if (mpz_odd_p(m.get_mpz_t())) r = F.mul(r, b);
                b = F.mul(b, b);
                m >>= 1;
            }
            g[i] = r;
        }
        poly_trim(F, g);
        return poly_squarefree_part(F, g);
    }
    poly<K> g = poly_gcd(F, f, d);
    if (poly_deg(g) == 0) return f;
    poly<K> s = f, q;
    poly_divmod(F, s, g, &q);  // s becomes remainder (zero), q the quotient
    poly<K> rest = poly_squarefree_part(F, g);
    poly<K> extra = poly_gcd(F, q, rest);  // avoid duplicating shared factors
    poly<K> t = rest, qq;
    poly_divmod(F, t, extra, &qq);
    return poly_mul(F, q, qq);
}

// Distinct-degree factorization of a squarefree monic f: list of
// (d, product of the irreducible factors of degree d), d ascending.
template <class K>
std::vector<std::pair<int, poly<K>>> poly_ddf(const K& F, poly<K> f) {
    std::vector<std::pair<int, poly<K>>> out;
    mpz_class q = F.order();
    poly<K> x{F.zero(), F.one()};
    poly<K> h = x;
    int d = 0;
    while (poly_deg(f) > 0) {
        ++d;
        if (2 * d > poly_deg(f)) {
            out.emplace_back(poly_deg(f), f);
            break;
        }
        h = poly_powmod(F, h, q, f);  // h = x^(q^d) mod f
        poly<K> hx = poly_sub(F, h, x);
        poly<K> g = poly_gcd(F, hx, f);
        if (poly_deg(g) > 0) {
            out.emplace_back(d, g);
            poly<K> rem = f, quo;
            poly_divmod(F, rem, g, &quo);
            f = quo;
            h = poly_mod(F, h, f);
        }
    }
    return out;
}

// Cantor-Zassenhaus equal-degree splitting: f is a monic squarefree product
// of irreducibles all of degree d. Deterministically seeded.
template <class K>
void poly_edf(const K& F, const poly<K>& f, int d, std::vector<poly<K>>& out,
              std::mt19937_64& rng) {
    if (poly_deg(f) == d) {
        out.push_back(f);
        return;
    }
    mpz_class qd;
    mpz_pow_ui(qd.get_mpz_t(), F.order().get_mpz_t(), (unsigned long)d);
    mpz_class e = (qd - 1) / 2;
    for (;;) {
        poly<K> a(poly_deg(f), F.zero());
        for (auto& c : a) c = F.random_elem(rng);
        poly_trim(F, a);
        if (poly_deg(a) < 1) continue;
        poly<K> b = poly_powmod(F, a, e, f);
        b = poly_sub(F, b, poly<K>{F.one()});
        poly<K> g = poly_gcd(F, b, f);
        if (poly_deg(g) > 0 && poly_deg(g) < poly_deg(f)) {
            poly<K> rem = f, quo;
            poly_divmod(F, rem, g, &quo);
            poly_edf(F, g, d, out, rng);
            poly_edf(F, quo, d, out, rng);
            return;
        }
    }
}

// Monic irreducible factors of the squarefree part of f (multiplicities
// dropped; that is all the callers need).
template <class K>
std::vector<poly<K>> poly_distinct_irreducible_factors(const K& F, const poly<K>& f,
                                                       uint64_t seed = 0x9e3779b97f4a7c15ull) {
    std::vector<poly<K>> out;
    poly<K> sf = poly_squarefree_part(F, f);
    std::mt19937_64 rng(seed);
    for (auto& [d, prod] : poly_ddf(F, sf)) poly_edf(F, prod, d, out, rng);
    std::sort(out.begin(), out.end(), [&](const poly<K>& a, const poly<K>& b) {
        return a.size() < b.size();
    });
    return out;
}

// Orbit sizes of Frobenius on the distinct roots of f over the algebraic
// closure: the degrees of the distinct irreducible factors.
template <class K>
std::vector<int> poly_orbit_sizes(const K& F, const poly<K>& f) {
    std::vector<int> sizes;
    poly<K> sf = poly_squarefree_part(F, f);
    for (auto& [d, prod] : poly_ddf(F, sf))
        for (int i = 0; i < poly_deg(prod) / d; ++i) sizes.push_back(d);
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

// Roots of f that lie in the base field K.
template <class K>
std::vector<typename K::elem> poly_roots_in_field(const K& F, const poly<K>& f,
                                                  uint64_t seed = 0xd1b54a32d192ed03ull) {
    std::vector<typename K::elem> roots;
    poly<K> sf = poly_squarefree_part(F, f);
    poly<K> x{F.zero(), F.one()};
    poly<K> xq = poly_powmod(F, x, F.order(), sf);
    poly<K> lin = poly_gcd(F, poly_sub(F, xq, x), sf);
    if (poly_deg(lin) <= 0) return roots;
    std::vector<poly<K>> fac;
    std::mt19937_64 rng(seed);
    poly_edf(F, lin, 1, fac, rng);
    for (auto& g : fac) roots.push_back(F.neg(g[0]));  // monic x + c
    return roots;
}

// Resultant of f and g via the Euclidean recurrence.
template <class K>
typename K::elem poly_resultant(const K& F, poly<K> f, poly<K> g) {
    poly_trim(F, f);
    poly_trim(F, g);
    auto res = F.one();
    if (f.empty() || g.empty()) {
        // res(f, 0) = 0 unless both are constants
        return (poly_deg(f) <= 0 && poly_deg(g) <= 0) ? F.one() : F.zero();
    }
    while (true) {
        if (poly_deg(g) == 0) {
            // res *= g0^deg(f)
            auto b = g[0];
            for (int i = 0; i < poly_deg(f); ++i) res = F.mul(res, b);
            return res;
        }
        int df = poly_deg(f), dg = poly_deg(g);
        poly<K> r = poly_mod(F, f, g);
        if ((df % 2) && (dg % 2)) res = F.neg(res);
        int dr = poly_deg(r);
        auto lg = g.back();
        for (int i = 0; i < df - (dr < 0 ? 0 : dr); ++i) res = F.mul(res, lg);
        if (r.empty()) return F.zero();
        f = std::move(g);
        g = std::move(r);
    }
}

// The quotient field K[x]/(pi) for a monic irreducible pi; elements are
// trimmed polynomials of degree < deg(pi). Used for towers F_q -> F_{q^d}
// in the smoothness check.
template <class K>
struct QuotientField {
    K base;
    poly<K> pi;

    using elem = poly<K>;
    elem zero() const { return {}; }
    elem one() const { return {base.one()}; }
    bool is_zero(const elem& a) const { return a.empty(); }
    bool eq(const elem& a, const elem& b) const {
        if (a.size() != b.size()) return false;
        for (size_t i = 0; i < a.size(); ++i)
            if (!base.eq(a[i], b[i])) return false;
        return true;
    }
    elem add(const elem& a, const elem& b) const { return poly_add(base, a, b); }
    elem sub(const elem& a, const elem& b) const { return poly_sub(base, a, b); }
    elem neg(const elem& a) const { return poly_sub(base, {}, a); }
    elem mul(const elem& a, const elem& b) const { return poly_mulmod(base, a, b, pi); }
    elem inv(const elem& a) const {
        if (a.empty()) throw precision_error("inversion of zero in extension tower");
        // extended Euclid over K[x]
        poly<K> r0 = pi, r1 = a, t0, t1{base.one()};
        while (!r1.empty()) {
            poly<K> q, rem = r0;
            poly_divmod(base, rem, r1, &q);
            poly<K> t2 = poly_sub(base, t0, poly_mul(base, q, t1));
            r0 = std::move(r1);
            r1 = std::move(rem);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        auto c = base.inv(r0[0]);
        return poly_scalar_mul(base, c, poly_mod(base, t0, pi));
    }
    elem from_int(int64_t c) const { return embed(base.from_int(c)); }
    int64_t char_p() const { return base.char_p(); }
    mpz_class order() const {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), base.order().get_mpz_t(), (unsigned long)poly_deg(pi));
        return r;
    }
    template <class RNG>
    elem random_elem(RNG& rng) const {
        elem a(poly_deg(pi), base.zero());
        for (auto& c : a) c = base.random_elem(rng);
        poly_trim(base, a);
        return a;
    }
    // image of a base-field constant
    elem embed(const typename K::elem& c) const {
        if (base.is_zero(c)) return {};
        return {c};
    }
};

}  // namespace quartic_zeta
