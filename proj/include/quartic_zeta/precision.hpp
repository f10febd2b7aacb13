#pragma once

#include <cmath>
#include <cstdint>

#include "quartic_zeta/errors.hpp"

namespace quartic_zeta {

// floor(log_p m) for integer m >= 1, by exact power comparison
inline int floor_log_int(long p, long m) {
    int e = 0;
    long pw = 1;
    while (pw <= m / p) {
        pw *= p;
        ++e;
    }
    return e;
}

// log_p(x) for real x > 0, biased upward: over-estimating a precision
// constant is sound, under-estimating is not.
inline double logp_up(long p, double x) {
    return std::log(x) / std::log((double)p) + 1e-9;
}

inline int tau_of_p(long p) {
    if (p == 3) return 5;
    if (p == 5) return 3;
    if (p <= 13) return 1;  // p in {7, 11, 13}
    return 0;
}

// The working precisions of the whole pipeline:
//   N1 final coefficient precision, N2 Frobenius-matrix precision,
//   (N3, N4) series truncation (x-degree, p-power), N5 reduction headroom.
struct PrecisionProfile {
    int N1 = 0, N2 = 0, N3 = 0, N4 = 0, N5 = 0;
    int Delta = 0;
    int tau = 0;
    double c = 0, c1 = 0, c2 = 0;  // retained for audit
    bool rigorous = false;

    void check() const {
        if (!(N5 >= N4 && N4 >= N2 && N2 >= N1 && N1 >= 1 && N3 >= 1))
            throw precision_error("precision profile violates N5 >= N4 >= N2 >= N1 >= 1");
    }
};

inline PrecisionProfile precision_profile(long p, int n) {
    PrecisionProfile P;
    P.rigorous = true;
    P.tau = tau_of_p(p);
    P.Delta = 11 * (floor_log_int(p, 63) + P.tau);
    P.N1 = 2 * n + floor_log_int(p, 30) + 1;
    P.c1 = 6 + logp_up(p, 80) + P.Delta;
    P.c = std::floor(P.c1 + logp_up(p, P.c1 + logp_up(p, 2 * P.c1)) + 1e-9) + 1;
    P.N2 = P.N1 + (6 * n - 1) * (int)P.c;
    P.c2 = 6 + logp_up(p, 80) + P.Delta + P.N2;
    P.N3 = (int)std::floor(16.0 * p * (P.c2 + logp_up(p, 2 * P.c2)) + 1e-9) + 1;
    P.N4 = (int)std::floor(P.N2 + P.c1 + logp_up(p, P.c2 + logp_up(p, 2 * P.c2)) + 1e-9) + 1;
    P.N5 = P.N4 + 8 * floor_log_int(p, P.N3) + 14;
    P.check();
    return P;
}

// Low-precision preset for tests and quick runs; always paired with oracle
// verification since it has no proven error bound.
inline PrecisionProfile fast_profile(long p, int n) {
    PrecisionProfile P = precision_profile(p, n);
    P.rigorous = false;
    P.N4 = 2 * n + 6;
    P.N3 = (int)(16 * p * (P.N4 + 2));
    P.N5 = P.N4 + 8 * floor_log_int(p, P.N3) + 14;
    P.N2 = std::min(P.N2, P.N4);
    P.check();
    return P;
}

// Manual truncation overrides. Only N5 >= N4 is enforced up front; a run
// whose overrides are too small for integer recovery fails later with an
// honest precision error.
inline PrecisionProfile override_profile(long p, int n, int N3, int N4, int N5) {
    PrecisionProfile P = precision_profile(p, n);
    P.rigorous = false;
    if (N5 < N4 || N4 < 1 || N3 < 1) throw parse_error("precision override requires N5 >= N4 >= 1, N3 >= 1");
    P.N3 = N3;
    P.N4 = N4;
    P.N5 = N5;
    P.N2 = std::min(P.N2, P.N4);
    return P;
}

// Lemma-style convergence schedule of the Frobenius-lift solver: with series
// coefficient degrees deg h_k <= (k+1)d, the solution coefficients a_i obey
// v_p(a_i) >= j+2 once i > delta_j.
struct ConvergenceSchedule {
    long d = 0;  // = 4p for this curve family

    long delta(long j) const { return (4 * j + 1) * d; }
    long Delta(long i, long j) const { return (i + 4 * j) * d; }
};

inline ConvergenceSchedule convergence_schedule(long p) { return ConvergenceSchedule{4 * p}; }

}  // namespace quartic_zeta
