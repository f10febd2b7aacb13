#pragma once

#include <array>
#include <cstring>
#include <vector>

#include "quartic_zeta/curve.hpp"
#include "quartic_zeta/scaled.hpp"
#include "quartic_zeta/zq.hpp"

namespace quartic_zeta {

// Canonical element of Z_q[x,y] / (f, x^xcut) mod p^pcut with deg_y <= 3:
// rows[i] holds the coefficient of x^j y^i as n residues at [j*n + t].
struct AlgebraElement {
    int xcut = 0;
    int pcut = 0;
    int n = 1;
    std::array<std::vector<mpz_class>, 4> rows;

    bool is_zero() const {
        for (const auto& r : rows)
            for (const auto& c : r)
                if (c != 0) return false;
        return true;
    }
};

// A dx + B dy with algebra-element coefficients.
struct AlgebraForm {
    AlgebraElement A, B;
};

// dx-only form in scaled (valuation-tracked) coordinates, the interchange
// format between the Frobenius pullbacks and the reduction engine.
struct ScaledForm {
    int xcut = 0;
    std::array<std::vector<ZqScaled>, 4> rows;  // coefficient of x^j y^i dx
};

// The quotient ring Z_q[x,y]/(y^4 + g(x) y^2 + h(x), x^xcut) at precision
// p^pcut. Multiplication packs the bivariate (plus the Z_q generator axis)
// into one integer product (Kronecker substitution) so that GMP's large
// multiplication does the convolution.
class AlgebraRing {
  public:
    AlgebraRing(ZqRing R, const std::array<zq_elem, 3>& g, const std::array<zq_elem, 5>& h,
                int xcut)
        : R_(std::move(R)), xcut_(xcut) {
        for (int i = 0; i < 3; ++i) {
            g_[i] = g[i];
            R_.reduce(g_[i]);
        }
        for (int j = 0; j < 5; ++j) {
            h_[j] = h[j];
            R_.reduce(h_[j]);
        }
    }

    static AlgebraRing for_curve(const LiftedCurve& C, int pcut, int xcut) {
        ZqRing R(C.ctx, pcut);
        std::array<zq_elem, 3> g;
        std::array<zq_elem, 5> h;
        for (int i = 0; i < 3; ++i) {
            g[i] = C.a[i];
            R.reduce(g[i]);
        }
        for (int j = 0; j < 5; ++j) {
            h[j] = C.b[j];
            R.reduce(h[j]);
        }
        return AlgebraRing(std::move(R), g, h, xcut);
    }

    const ZqRing& zq() const { return R_; }
    int xcut() const { return xcut_; }
    int pcut() const { return R_.prec(); }
    const std::array<zq_elem, 3>& g() const { return g_; }
    const std::array<zq_elem, 5>& h() const { return h_; }

    AlgebraElement zero() const {
        AlgebraElement e;
        e.xcut = xcut_;
        e.pcut = pcut();
        e.n = R_.n();
        for (auto& r : e.rows) r.assign((size_t)xcut_ * R_.n(), mpz_class(0));
        return e;
    }

    AlgebraElement monomial(int ydeg, int xdeg, const zq_elem& c) const {
        AlgebraElement e = zero();
        if (xdeg < xcut_) set_coeff(e, ydeg, xdeg, c);
        return e;
    }

    AlgebraElement one() const { return monomial(0, 0, R_.one()); }

    void set_coeff(AlgebraElement& e, int ydeg, int xdeg, const zq_elem& c) const {
        for (int t = 0; t < R_.n(); ++t) {
            e.rows[ydeg][(size_t)xdeg * R_.n() + t] = c[t];
            mpz_mod(e.rows[ydeg][(size_t)xdeg * R_.n() + t].get_mpz_t(),
                    e.rows[ydeg][(size_t)xdeg * R_.n() + t].get_mpz_t(), R_.pN().get_mpz_t());
        }
    }

    zq_elem coeff(const AlgebraElement& e, int ydeg, int xdeg) const {
        zq_elem c(R_.n());
        for (int t = 0; t < R_.n(); ++t) c[t] = e.rows[ydeg][(size_t)xdeg * R_.n() + t];
        return c;
    }

    AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) const {
        AlgebraElement r = a;
        for (int i = 0; i < 4; ++i)
            for (size_t k = 0; k < r.rows[i].size(); ++k) {
                r.rows[i][k] += b.rows[i][k];
                if (r.rows[i][k] >= R_.pN()) r.rows[i][k] -= R_.pN();
            }
        return r;
    }

    AlgebraElement sub(const AlgebraElement& a, const AlgebraElement& b) const {
        AlgebraElement r = a;
        for (int i = 0; i < 4; ++i)
            for (size_t k = 0; k < r.rows[i].size(); ++k) {
                r.rows[i][k] -= b.rows[i][k];
                if (r.rows[i][k] < 0) r.rows[i][k] += R_.pN();
            }
        return r;
    }

    AlgebraElement neg(const AlgebraElement& a) const { return sub(zero(), a); }

    // multiply every coefficient by a ring scalar
    AlgebraElement scale(const AlgebraElement& a, const zq_elem& s) const {
        AlgebraElement r = zero();
        const int n = R_.n();
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < xcut_; ++j) {
                bool nz = false;
                for (int t = 0; t < n; ++t)
                    if (a.rows[i][(size_t)j * n + t] != 0) nz = true;
                if (!nz) continue;
                zq_elem c = coeff(a, i, j);
                set_coeff(r, i, j, R_.mul(c, s));
            }
        return r;
    }

    AlgebraElement scale_int(const AlgebraElement& a, long s) const {
        return scale(a, R_.from_int(s));
    }

    AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) const;

    AlgebraElement pow(const AlgebraElement& a, long e) const {
        AlgebraElement r = one(), b = a;
        while (e) {
            if (e & 1) r = mul(r, b);
            e >>= 1;
            if (e) b = mul(b, b);
        }
        return r;
    }

    // partial derivatives on the canonical representative
    AlgebraElement d_dx(const AlgebraElement& a) const {
        AlgebraElement r = zero();
        const int n = R_.n();
        for (int i = 0; i < 4; ++i)
            for (int j = 1; j < xcut_; ++j)
                for (int t = 0; t < n; ++t) {
                    const mpz_class& c = a.rows[i][(size_t)j * n + t];
                    if (c == 0) continue;
                    mpz_class& d = r.rows[i][(size_t)(j - 1) * n + t];
                    d = c * j;
                    mpz_mod(d.get_mpz_t(), d.get_mpz_t(), R_.pN().get_mpz_t());
                }
        return r;
    }

    AlgebraElement d_dy(const AlgebraElement& a) const {
        AlgebraElement r = zero();
        const int n = R_.n();
        for (int i = 1; i < 4; ++i)
            for (int j = 0; j < xcut_; ++j)
                for (int t = 0; t < n; ++t) {
                    const mpz_class& c = a.rows[i][(size_t)j * n + t];
                    if (c == 0) continue;
                    mpz_class& d = r.rows[i - 1][(size_t)j * n + t];
                    d = c * i;
                    mpz_mod(d.get_mpz_t(), d.get_mpz_t(), R_.pN().get_mpz_t());
                }
        return r;
    }

    AlgebraForm total_differential(const AlgebraElement& u) const {
        return AlgebraForm{d_dx(u), d_dy(u)};
    }

    // evaluate a degree-<=4 scalar polynomial at an algebra element, reusing
    // the square of the argument (coeffs[k] multiplies arg^k)
    AlgebraElement eval_poly(const std::vector<zq_elem>& coeffs, const AlgebraElement& arg,
                             const AlgebraElement& arg2) const {
        // split sum_k c_k arg^k = (c4 arg^2 + c3 arg + c2) arg^2 + (c1 arg + c0)
        auto cst = [&](const zq_elem& c) { return monomial(0, 0, c); };
        AlgebraElement low = zero();
        if (coeffs.size() > 1) low = scale(arg, coeffs[1]);
        if (!coeffs.empty()) low = add(low, cst(coeffs[0]));
        if (coeffs.size() <= 2) return low;
        AlgebraElement high = zero();
        if (coeffs.size() > 4) high = scale(arg2, coeffs[4]);
        if (coeffs.size() > 3) high = add(high, scale(arg, coeffs[3]));
        high = add(high, cst(coeffs[2]));
        return add(mul(high, arg2), low);
    }

    bool eq(const AlgebraElement& a, const AlgebraElement& b) const {
        for (int i = 0; i < 4; ++i)
            if (a.rows[i] != b.rows[i]) return false;
        return true;
    }

    int effective_len(const AlgebraElement& a) const {
        const int n = R_.n();
        for (int j = xcut_; j-- > 0;)
            for (int i = 0; i < 4; ++i)
                for (int t = 0; t < n; ++t)
                    if (a.rows[i][(size_t)j * n + t] != 0) return j + 1;
        return 0;
    }

    // reduce an element into a lower-precision/shorter ring
    AlgebraElement to_ring(const AlgebraRing& target, const AlgebraElement& a) const {
        AlgebraElement r = target.zero();
        const int n = R_.n();
        int L = std::min(xcut_, target.xcut_);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < L; ++j)
                for (int t = 0; t < n; ++t) {
                    mpz_class& d = r.rows[i][(size_t)j * n + t];
                    d = a.rows[i][(size_t)j * n + t];
                    mpz_mod(d.get_mpz_t(), d.get_mpz_t(), target.R_.pN().get_mpz_t());
                }
        return r;
    }

  private:
    // accumulate dst -= c * s where c is a ring scalar and s an n-limb slice
    void sub_scaled_slice(mpz_class* dst, const zq_elem& c, const mpz_class* s) const {
        const int n = R_.n();
        if (n == 1) {
            dst[0] -= c[0] * s[0];
            return;
        }
        std::vector<mpz_class> acc(2 * n - 1);
        for (int i = 0; i < n; ++i) {
            if (c[i] == 0) continue;
            for (int j = 0; j < n; ++j) acc[i + j] += c[i] * s[j];
        }
        for (int d = 2 * n - 2; d >= n; --d) {
            if (acc[d] == 0) continue;
            for (int j = 0; j < n; ++j) {
                long mj = (long)R_.ctx().modulus[j];
                if (mj) acc[d - n + j] -= acc[d] * mj;
            }
            acc[d] = 0;
        }
        for (int j = 0; j < n; ++j) dst[j] -= acc[j];
    }

    ZqRing R_;
    int xcut_;
    std::array<zq_elem, 3> g_;
    std::array<zq_elem, 5> h_;
};

inline AlgebraElement AlgebraRing::mul(const AlgebraElement& a, const AlgebraElement& b) const {
    const int n = R_.n();
    const int S = 2 * n - 1;  // generator-axis stride (product degree < S)
    const int ea = effective_len(a), eb = effective_len(b);
    AlgebraElement out = zero();
    if (ea == 0 || eb == 0) return out;
    const int lp = std::min(ea + eb - 1, xcut_);

    // slot width: products are bounded by (#terms) * (p^pcut - 1)^2
    size_t unit_bits = mpz_sizeinbase(R_.pN().get_mpz_t(), 2);
    size_t terms = (size_t)4 * n * (size_t)std::min(ea, eb);
    size_t term_bits = 1;
    while ((terms >> term_bits) != 0) ++term_bits;
    size_t slot_bits = 2 * unit_bits + term_bits + 1;
    const size_t w = (slot_bits + 63) / 64;

    auto pack = [&](const AlgebraElement& e, int len) {
        std::vector<uint64_t> buf((size_t)len * 7 * S * w, 0);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < len; ++j)
                for (int t = 0; t < n; ++t) {
                    const mpz_class& c = e.rows[i][(size_t)j * n + t];
                    if (c == 0) continue;
                    size_t slot = ((size_t)j * 7 + i) * S + t;
                    size_t cnt = 0;
                    mpz_export(&buf[slot * w], &cnt, -1, 8, 0, 0, c.get_mpz_t());
                }
        return buf;
    };

    std::vector<uint64_t> ba = pack(a, ea), bb = pack(b, eb);
    mpz_class za, zb, zp;
    mpz_import(za.get_mpz_t(), ba.size(), -1, 8, 0, 0, ba.data());
    mpz_import(zb.get_mpz_t(), bb.size(), -1, 8, 0, 0, bb.data());
    zp = za * zb;

    size_t prod_slots = (size_t)(ea + eb - 1) * 7 * S;
    std::vector<uint64_t> bp((prod_slots + 2) * w, 0);
    size_t cnt = 0;
    mpz_export(bp.data(), &cnt, -1, 8, 0, 0, zp.get_mpz_t());

    // unpack with generator-axis reduction by the modulus, then fold y-rows
    // 6..4 with y^4 = -(g y^2 + h); cascaded folds raise x-degrees by up to 6
    const int lmax = std::min(lp + 8, xcut_);
    std::array<std::vector<mpz_class>, 7> rows7;
    for (auto& r : rows7) r.assign((size_t)lmax * n, mpz_class(0));
    std::vector<mpz_class> tv(S);
    for (int j = 0; j < lp; ++j)
        for (int i = 0; i < 7; ++i) {
            size_t base = ((size_t)j * 7 + i) * S;
            bool nz = false;
            for (int t = 0; t < S; ++t) {
                mpz_import(tv[t].get_mpz_t(), w, -1, 8, 0, 0, &bp[(base + t) * w]);
                if (tv[t] != 0) nz = true;
            }
            if (!nz) continue;
            for (int d = S - 1; d >= n; --d) {
                if (tv[d] == 0) continue;
                for (int s = 0; s < n; ++s) {
                    long ms = (long)R_.ctx().modulus[s];
                    if (ms) tv[d - n + s] -= tv[d] * ms;
                }
                tv[d] = 0;
            }
            for (int t = 0; t < n; ++t)
                mpz_mod(rows7[i][(size_t)j * n + t].get_mpz_t(), tv[t].get_mpz_t(),
                        R_.pN().get_mpz_t());
        }

    for (int i = 6; i >= 4; --i) {
        for (int j = 0; j < lmax; ++j) {
            const mpz_class* src = &rows7[i][(size_t)j * n];
            bool nz = false;
            for (int t = 0; t < n; ++t)
                if (src[t] != 0) nz = true;
            if (!nz) continue;
            zq_elem c(n);
            for (int t = 0; t < n; ++t) c[t] = src[t];
            for (int dg = 0; dg <= 2; ++dg) {
                if (j + dg >= lmax) break;
                if (!R_.is_zero(g_[dg]))
                    sub_scaled_slice(&rows7[i - 2][(size_t)(j + dg) * n], g_[dg], src);
            }
            for (int dh = 0; dh <= 4; ++dh) {
                if (j + dh >= lmax) break;
                if (!R_.is_zero(h_[dh]))
                    sub_scaled_slice(&rows7[i - 4][(size_t)(j + dh) * n], h_[dh], src);
            }
        }
        rows7[i].clear();
    }

    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < lmax; ++j)
            for (int t = 0; t < n; ++t)
                mpz_mod(out.rows[i][(size_t)j * n + t].get_mpz_t(),
                        rows7[i][(size_t)j * n + t].get_mpz_t(), R_.pN().get_mpz_t());
    return out;
}

// Rewrite A dx + B dy as a cohomologous dx-only form in scaled coordinates:
// x^j y^i dy = d(x^j y^(i+1))/(i+1) - (j/(i+1)) x^(j-1) y^(i+1) dx, and the
// resulting y^4 is folded through f. Divisions by i+1 (and the y^4 fold) are
// tracked in the scaled layer; only i+1 = 3 can meet p.
inline ScaledForm normalize_to_dx(const AlgebraForm& form, const ScaledRing& S,
                                  const std::array<ZqScaled, 3>& g,
                                  const std::array<ZqScaled, 5>& h) {
    const AlgebraElement& A = form.A;
    const AlgebraElement& B = form.B;
    const int xc = A.xcut, n = A.n;
    const ZqRing& R = S.ring();
    ScaledForm out;
    out.xcut = xc;
    for (auto& r : out.rows) r.assign(xc, S.exact_zero());

    // Coefficients enter the reduction pipeline as exact scaled values: the
    // N-schedule (not per-value ball tracking) guarantees how many digits of
    // the reduced output are meaningful.
    auto coeff_at = [&](const AlgebraElement& e, int i, int j) {
        zq_elem c(n);
        bool nz = false;
        for (int t = 0; t < n; ++t) {
            c[t] = e.rows[i][(size_t)j * n + t];
            if (c[t] != 0) nz = true;
        }
        if (!nz) return S.exact_zero();
        zq_elem cc = c;
        R.reduce(cc);
        return S.from_zq_exact(cc);
    };

    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < xc; ++j) out.rows[i][j] = coeff_at(A, i, j);

    for (int i = 0; i < 4; ++i) {
        ZqScaled div = S.from_rational(-1, i + 1);
        for (int j = 1; j < xc; ++j) {
            ZqScaled c = coeff_at(B, i, j);
            if (c.is_exact_zero()) continue;
            ZqScaled term = S.mul(S.mul_int(c, j), div);  // -(j/(i+1)) * c
            if (i < 3) {
                out.rows[i + 1][j - 1] = S.add(out.rows[i + 1][j - 1], term);
            } else {
                // term * y^4 at x^(j-1): fold y^4 = -(g y^2 + h)
                for (int dg = 0; dg <= 2; ++dg) {
                    int jj = j - 1 + dg;
                    if (jj >= xc || g[dg].is_exact_zero()) continue;
                    out.rows[2][jj] = S.sub(out.rows[2][jj], S.mul(term, g[dg]));
                }
                for (int dh = 0; dh <= 4; ++dh) {
                    int jj = j - 1 + dh;
                    if (jj >= xc || h[dh].is_exact_zero()) continue;
                    out.rows[0][jj] = S.sub(out.rows[0][jj], S.mul(term, h[dh]));
                }
            }
        }
    }
    return out;
}

}  // namespace quartic_zeta
