#pragma once

#include <string>
#include <vector>

#include "quartic_zeta/frobenius.hpp"
#include "quartic_zeta/intpoly.hpp"
#include "quartic_zeta/oracle.hpp"
#include "quartic_zeta/reduction.hpp"

namespace quartic_zeta {

// Matrix of a Frobenius power acting on the cohomology basis; column c holds
// the coordinates of the image of basis element c.
struct FrobeniusMatrix {
    int dim = 0;
    std::vector<ZqScaled> e;  // row-major
    CohomologyBasis basis;

    ZqScaled& at(int r, int c) { return e[(size_t)r * dim + c]; }
    const ZqScaled& at(int r, int c) const { return e[(size_t)r * dim + c]; }
};

enum class EngineMode { split, full };

// the six/nine normalized pullback forms F_p(x^j y^i dx), one per basis column
inline std::vector<ScaledForm> pullback_forms(const ReductionEngine& E, const FrobeniusData& D) {
    std::vector<ScaledForm> forms;
    forms.reserve(E.basis().elems.size());
    for (auto& [i, j] : E.basis().elems)
        forms.push_back(frobenius_form(j, i, D, E.scaled(), E.a(), E.b()));
    return forms;
}

// reduce every pullback form onto the basis and check the parity block
// structure is exact
inline FrobeniusMatrix assemble_Mp(const ReductionEngine& E,
                                   const std::vector<ScaledForm>& forms) {
    const CohomologyBasis& basis = E.basis();
    FrobeniusMatrix M;
    M.dim = basis.size();
    M.basis = basis;
    M.e.assign((size_t)M.dim * M.dim, ZqScaled{});
    for (int c = 0; c < M.dim; ++c) {
        std::vector<ZqScaled> coords = E.reduce(forms[c]);
        for (int r = 0; r < M.dim; ++r) M.at(r, c) = coords[r];
    }
    // tau-equivariance: parity-coupling entries are exactly zero
    for (int c = 0; c < M.dim; ++c) {
        bool c_odd = basis.elems[c].first != 2;
        for (int r = 0; r < M.dim; ++r) {
            bool r_odd = basis.elems[r].first != 2;
            if (c_odd != r_odd && !M.at(r, c).is_exact_zero())
                throw assumption_error("parity-coupling entry of M_p is nonzero");
        }
    }
    return M;
}

inline FrobeniusMatrix matrix_mul(const ScaledRing& S, const FrobeniusMatrix& A,
                                  const FrobeniusMatrix& B) {
    FrobeniusMatrix C;
    C.dim = A.dim;
    C.basis = A.basis;
    C.e.assign((size_t)C.dim * C.dim, ZqScaled{});
    for (int i = 0; i < C.dim; ++i)
        for (int k = 0; k < C.dim; ++k) {
            const ZqScaled& a = A.at(i, k);
            if (a.is_exact_zero()) continue;
            for (int j = 0; j < C.dim; ++j) {
                const ZqScaled& b = B.at(k, j);
                if (b.is_exact_zero()) continue;
                C.at(i, j) = S.add(C.at(i, j), S.mul(a, b));
            }
        }
    return C;
}

inline FrobeniusMatrix matrix_sigma(const ScaledRing& S, const FrobeniusMatrix& A, int k) {
    FrobeniusMatrix B = A;
    for (auto& x : B.e) x = S.sigma_iter(x, k);
    return B;
}

// M_q = M_p M_p^sigma ... M_p^(sigma^(n-1)) along the binary expansion of n:
// N_(a+b) = N_a sigma^a(N_b).
inline FrobeniusMatrix twisted_norm(const ScaledRing& S, const FrobeniusMatrix& Mp, int n) {
    if (n <= 1) return Mp;
    int hi = 0;
    while ((n >> (hi + 1)) != 0) ++hi;
    FrobeniusMatrix acc = Mp;
    int m = 1;  // acc = N_m throughout; m stays <= n
    for (int bit = hi - 1; bit >= 0; --bit) {
        acc = matrix_mul(S, acc, matrix_sigma(S, acc, m));
        m *= 2;
        if ((n >> bit) & 1) {
            acc = matrix_mul(S, acc, matrix_sigma(S, Mp, m));
            m += 1;
        }
    }
    return acc;
}

// division-free characteristic polynomial (Berkowitz/Samuelson recursion);
// returns coefficients in descending degree, leading coefficient 1.
inline std::vector<ZqScaled> charpoly(const ScaledRing& S, const FrobeniusMatrix& A) {
    int d = A.dim;
    std::vector<ZqScaled> pr{S.from_int(1)};
    for (int r = 1; r <= d; ++r) {
        // v = (1, -a_rr, -s_0, ..., -s_(r-2)), s_k = R A_(r-1)^k C
        std::vector<ZqScaled> v;
        v.push_back(S.from_int(1));
        v.push_back(S.neg(A.at(r - 1, r - 1)));
        if (r >= 2) {
            std::vector<ZqScaled> w(r - 1);
            for (int i = 0; i < r - 1; ++i) w[i] = A.at(i, r - 1);  // column C
            for (int k = 0; k <= r - 2; ++k) {
                ZqScaled s = S.exact_zero();
                for (int i = 0; i < r - 1; ++i)
                    s = S.add(s, S.mul(A.at(r - 1, i), w[i]));  // R . w
                v.push_back(S.neg(s));
                if (k < r - 2) {
                    std::vector<ZqScaled> w2(r - 1, S.exact_zero());
                    for (int i = 0; i < r - 1; ++i) {
                        if (w[i].is_exact_zero()) continue;
                        for (int ii = 0; ii < r - 1; ++ii)
                            w2[ii] = S.add(w2[ii], S.mul(A.at(ii, i), w[i]));
                    }
                    w = std::move(w2);
                }
            }
        }
        // truncated convolution: p_r is the degree-r prefix of v * p_(r-1)
        std::vector<ZqScaled> pn(r + 1, S.exact_zero());
        for (size_t i = 0; i < v.size(); ++i)
            for (size_t j = 0; j < pr.size() && i + j <= (size_t)r; ++j)
                pn[i + j] = S.add(pn[i + j], S.mul(v[i], pr[j]));
        pr = std::move(pn);
    }
    return pr;
}

inline FrobeniusMatrix submatrix(const FrobeniusMatrix& M, const std::vector<int>& idx) {
    FrobeniusMatrix B;
    B.dim = (int)idx.size();
    B.basis = M.basis;
    B.e.assign((size_t)B.dim * B.dim, ZqScaled{});
    for (int i = 0; i < B.dim; ++i)
        for (int j = 0; j < B.dim; ++j) B.e[(size_t)i * B.dim + j] = M.at(idx[i], idx[j]);
    return B;
}

// Everything reconstructed from the Frobenius matrix: block characteristic
// polynomials read mod p^N1, the orbit corrections divided out, integer
// coefficients recovered by balanced residues under the Weil bounds.
struct WeilData {
    ipoly charpoly_odd, charpoly_even;  // residues mod p^N1, ascending degree
    ipoly P_E, P_2, P_V, P;             // exact integer polynomials, ascending
    mpz_class q;
};

namespace detail {

// read a scaled charpoly coefficient as a rational-integer residue mod p^N1
inline mpz_class read_residue(const ScaledRing& S, const ZqScaled& c, int N1,
                              const ZqRing& R1) {
    zq_elem r = S.to_residue(c, N1, R1);
    for (int t = 1; t < R1.n(); ++t)
        if (r[t] != 0)
            throw precision_error("characteristic polynomial coefficient is not rational");
    return r[0];
}

// exact division of residue polynomials mod p^N1 by a monic integer divisor;
// the remainder must vanish
inline ipoly divide_exact_mod(const ipoly& num, const ipoly& den, const mpz_class& mod,
                              const char* what) {
    ipoly rem = num;
    for (auto& c : rem) mpz_mod(c.get_mpz_t(), c.get_mpz_t(), mod.get_mpz_t());
    ipoly quo;
    if (rem.size() >= den.size()) {
        quo.assign(rem.size() - den.size() + 1, mpz_class(0));
        for (size_t shift = quo.size(); shift-- > 0;) {
            mpz_class f = rem[shift + den.size() - 1];
            quo[shift] = f;
            if (f != 0)
                for (size_t j = 0; j < den.size(); ++j) {
                    rem[shift + j] -= f * den[j];
                    mpz_mod(rem[shift + j].get_mpz_t(), rem[shift + j].get_mpz_t(),
                            mod.get_mpz_t());
                }
        }
    }
    for (auto& c : rem)
        if (c != 0) throw assumption_error(what);
    return quo;
}

inline mpz_class balanced(const mpz_class& t, const mpz_class& mod, const mpz_class& bound,
                          const char* what) {
    if (mod <= 2 * bound) throw precision_error("modulus too small for balanced recovery");
    mpz_class v = t;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
    if (v * 2 > mod) v -= mod;
    if (v > bound || -v > bound) throw precision_error(what);
    return v;
}

}  // namespace detail

// Verify the genus-3 functional equation X^6 P(q/X) = q^3 P(X), the Weil
// coefficient bounds, and P(1) > 0.
inline void verify_weil_sextic(const ipoly& P, const mpz_class& q) {
    if (P.size() != 7 || P[6] != 1) throw assumption_error("P is not a monic sextic");
    if (P[0] != q * q * q || P[1] != q * q * P[5] || P[2] != q * P[4])
        throw assumption_error("functional equation violated");
    mpz_class sq;
    mpz_sqrt(sq.get_mpz_t(), mpz_class(36 * q).get_mpz_t());
    if (P[5] > sq || -P[5] > sq) throw assumption_error("Weil bound violated for e1");
    if (P[4] > 15 * q || -P[4] > 15 * q) throw assumption_error("Weil bound violated for e2");
    if (ipoly_eval(P, 1) <= 0) throw assumption_error("P(1) must be positive");
}

inline WeilData reconstruct(const LiftedCurve& C, const FrobeniusMatrix& Mq,
                            const PrecisionProfile& prof, const ScaledRing& S,
                            EngineMode mode) {
    WeilData W;
    mpz_ui_pow_ui(W.q.get_mpz_t(), (unsigned long)C.ctx->p, (unsigned long)C.ctx->n);
    ZqRing R1(C.ctx, prof.N1);
    const mpz_class& mod = R1.pN();

    auto read_poly = [&](const FrobeniusMatrix& B) {
        std::vector<ZqScaled> cp = charpoly(S, B);  // descending
        ipoly out(cp.size());
        for (size_t i = 0; i < cp.size(); ++i)
            out[cp.size() - 1 - i] = detail::read_residue(S, cp[i], prof.N1, R1);
        return out;  // ascending, monic
    };

    FrobeniusMatrix modd = submatrix(Mq, Mq.basis.odd_positions);
    FrobeniusMatrix meven = submatrix(Mq, Mq.basis.even_positions);
    W.charpoly_odd = read_poly(modd);
    W.charpoly_even = read_poly(meven);

    const ipoly& R_C = C.inf.R_C;
    const ipoly& R_E = C.inf.R_E;

    // P_E = charpoly_even / R_E, a quadratic X^2 - a X + q
    ipoly pe_res = detail::divide_exact_mod(W.charpoly_even, R_E, mod,
                                            "orbit-correction mismatch (R_E)");
    if (pe_res.size() != 3) throw assumption_error("even block has unexpected dimension");
    mpz_class sq2;
    mpz_sqrt(sq2.get_mpz_t(), mpz_class(4 * W.q).get_mpz_t());
    mpz_class aE = -detail::balanced(pe_res[1], mod, sq2, "precision insufficient for a_E");
    detail::balanced(pe_res[0] - W.q, mod, mpz_class(0), "P_E constant term is not q");
    W.P_E = ipoly{W.q, -aE, 1};

    // P_2 = charpoly_odd * R_E / R_C, a Weil quartic
    ipoly num = ipoly_mul(W.charpoly_odd, R_E);
    ipoly p2_res =
        detail::divide_exact_mod(num, R_C, mod, "orbit-correction mismatch (R_C)");
    if (p2_res.size() != 5) throw assumption_error("odd block has unexpected dimension");
    mpz_class sq4;
    mpz_sqrt(sq4.get_mpz_t(), mpz_class(16 * W.q).get_mpz_t());
    mpz_class e1 = -detail::balanced(p2_res[3], mod, sq4, "precision insufficient for e1");
    mpz_class e2 = detail::balanced(p2_res[2], mod, mpz_class(6 * W.q),
                                    "precision insufficient for e2");
    detail::balanced(p2_res[1] + W.q * e1, mod, mpz_class(0),
                     "P_2 functional equation violated (e3)");
    detail::balanced(p2_res[0] - W.q * W.q, mod, mpz_class(0),
                     "P_2 functional equation violated (e4)");
    W.P_2 = ipoly{W.q * W.q, -(W.q * e1), e2, -e1, 1};

    // P_V = P_2 * (R_C / R_E) for reporting; exact integer division
    ipoly corr = ipoly_divexact_monic(ipoly(R_C), R_E, "orbit correction R_E does not divide R_C");
    W.P_V = ipoly_mul(W.P_2, corr);

    W.P = ipoly_mul(W.P_E, W.P_2);

    if (mode == EngineMode::full) {
        // cross-check: the full charpoly equals the product of the blocks,
        // and P recovered from it directly matches
        ipoly full = read_poly(Mq);
        ipoly prod = ipoly_mul(W.charpoly_odd, W.charpoly_even);
        for (auto& c : prod) mpz_mod(c.get_mpz_t(), c.get_mpz_t(), mod.get_mpz_t());
        if (full != prod) throw assumption_error("full charpoly != product of parity blocks");
        ipoly p_res = detail::divide_exact_mod(full, R_C, mod,
                                               "orbit-correction mismatch (full mode)");
        if (p_res.size() != 7) throw assumption_error("full matrix has unexpected dimension");
        mpz_class sq6, q32;
        mpz_sqrt(sq6.get_mpz_t(), mpz_class(36 * W.q).get_mpz_t());
        mpz_class f1 = -detail::balanced(p_res[5], mod, sq6, "precision insufficient for f1");
        mpz_class f2 = detail::balanced(p_res[4], mod, mpz_class(15 * W.q),
                                        "precision insufficient for f2");
        mpz_sqrt(q32.get_mpz_t(), mpz_class(400 * W.q * W.q * W.q).get_mpz_t());
        mpz_class f3 = -detail::balanced(p_res[3], mod, q32, "precision insufficient for f3");
        ipoly Pfull{W.q * W.q * W.q, -(W.q * W.q * f1), W.q * f2, -f3, f2, -f1, 1};
        if (Pfull != W.P) throw assumption_error("full-mode P disagrees with split-mode P");
    }

    verify_weil_sextic(W.P, W.q);
    return W;
}

}  // namespace quartic_zeta
