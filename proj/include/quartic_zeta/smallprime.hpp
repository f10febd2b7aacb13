#pragma once

#include <cstdint>

#include "quartic_zeta/errors.hpp"

namespace quartic_zeta {

// Arithmetic mod a small odd prime p (p < 2^31, so products fit in int64).

inline std::int64_t mod_p(std::int64_t a, std::int64_t p) {
    std::int64_t r = a % p;
    return r < 0 ? r + p : r;
}

inline std::int64_t add_p(std::int64_t a, std::int64_t b, std::int64_t p) {
    std::int64_t s = a + b;
    return s >= p ? s - p : s;
}

inline std::int64_t sub_p(std::int64_t a, std::int64_t b, std::int64_t p) {
    std::int64_t s = a - b;
    return s < 0 ? s + p : s;
}

inline std::int64_t mul_p(std::int64_t a, std::int64_t b, std::int64_t p) {
    return (a * b) % p;
}

inline std::int64_t pow_p(std::int64_t a, std::uint64_t e, std::int64_t p) {
    std::int64_t r = 1 % p, b = mod_p(a, p);
    while (e) {
        if (e & 1) r = mul_p(r, b, p);
        b = mul_p(b, b, p);
        e >>= 1;
    }
    return r;
}

inline std::int64_t inv_p(std::int64_t a, std::int64_t p) {
    a = mod_p(a, p);
    if (a == 0) throw precision_error("inversion of zero in F_p");
    // extended Euclid
    std::int64_t r0 = p, r1 = a, t0 = 0, t1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t r2 = r0 - q * r1;
        std::int64_t t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    return mod_p(t0, p);
}

inline bool is_prime_small(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace quartic_zeta
