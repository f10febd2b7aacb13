#pragma once

#include <vector>

#include <gmpxx.h>

#include "quartic_zeta/errors.hpp"

namespace quartic_zeta {

// Small exact integer polynomials (ascending degree, trimmed), used for the
// orbit-correction factors and Weil-polynomial bookkeeping.
using ipoly = std::vector<mpz_class>;

inline void ipoly_trim(ipoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ipoly ipoly_mul(const ipoly& a, const ipoly& b) {
    if (a.empty() || b.empty()) return {};
    ipoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    ipoly_trim(r);
    return r;
}

inline ipoly ipoly_add(const ipoly& a, const ipoly& b) {
    ipoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    ipoly_trim(r);
    return r;
}

// exact division by a monic divisor; throws if the division leaves a remainder
inline ipoly ipoly_divexact_monic(ipoly a, const ipoly& b, const char* what) {
    if (b.empty() || b.back() != 1) throw assumption_error("divisor must be monic");
    ipoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
    ipoly_trim(a);
    while (a.size() >= b.size()) {
        mpz_class f = a.back();
        size_t shift = a.size() - b.size();
        q[shift] = f;
        for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= f * b[j];
        ipoly_trim(a);
    }
    if (!a.empty()) throw assumption_error(what);
    ipoly_trim(q);
    return q;
}

inline mpz_class ipoly_eval(const ipoly& a, const mpz_class& x) {
    mpz_class r = 0;
    for (size_t i = a.size(); i-- > 0;) r = r * x + a[i];
    return r;
}

}  // namespace quartic_zeta
