#pragma once

#include <algorithm>

#include "quartic_zeta/fq_poly.hpp"

namespace quartic_zeta {

// F_q -> F_{q^r} as flat contexts over F_p, with an explicit ring
// homomorphism fixing F_p. Used by the oracle to push curve coefficients
// into F_{q^r} and by smoothness cross-checks.
struct FieldEmbedding {
    FieldContextPtr src;
    FieldContextPtr dst;
    std::vector<fq_elem> gen_powers;  // images of t^0 .. t^(n-1) in dst

    fq_elem map(const fq_elem& a) const {
        fq_elem r = fq_zero(*dst);
        for (int i = 0; i < src->n; ++i)
            if (a[i]) r = fq_add(*dst, r, fq_scalar_mul(*dst, a[i], gen_powers[i]));
        return r;
    }
};

inline FieldEmbedding extension_field(const FieldContextPtr& src, int r) {
    if (r < 1) throw parse_error("extension degree must be >= 1");
    FieldEmbedding E;
    E.src = src;
    if (r == 1) {
        E.dst = src;
        fq_elem t = fq_zero(*src);
        fq_elem pw = fq_one(*src);
        if (src->n > 1) t[1] = 1;
        for (int i = 0; i < src->n; ++i) {
            E.gen_powers.push_back(pw);
            if (src->n > 1) pw = fq_mul(*src, pw, t);
        }
        return E;
    }
    E.dst = build_context(src->p, src->n * r);
    // root of the source modulus inside the big field, smallest by index so
    // that runs are reproducible
    FqField big{E.dst};
    poly<FqField> m(src->modulus.size());
    for (size_t i = 0; i < src->modulus.size(); ++i) m[i] = fq_from_int(*E.dst, src->modulus[i]);
    auto roots = poly_roots_in_field(big, m);
    if (roots.empty()) throw assumption_error("modulus has no root in the extension field");
    std::sort(roots.begin(), roots.end(), [&](const fq_elem& a, const fq_elem& b) {
        return fq_index(*E.dst, a) < fq_index(*E.dst, b);
    });
    fq_elem root = roots.front();
    fq_elem pw = fq_one(*E.dst);
    for (int i = 0; i < src->n; ++i) {
        E.gen_powers.push_back(pw);
        pw = fq_mul(*E.dst, pw, root);
    }
    return E;
}

}  // namespace quartic_zeta
