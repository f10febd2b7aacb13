#pragma once

#include <cassert>
#include <memory>
#include <vector>

#include <gmpxx.h>

#include "quartic_zeta/fq.hpp"

namespace quartic_zeta {

// Element of Z_q / p^N: polynomial in the generator T of degree < n with
// coefficients reduced into [0, p^N).
using zq_elem = std::vector<mpz_class>;

// Arithmetic in Z_q / p^N over a fixed FieldContext. The modulus of Z_q is
// the canonical {0..p-1} lift M of the residue field modulus m.
// Immutable after construction except the write-once sigma cache.
class ZqRing {
  public:
    ZqRing(FieldContextPtr F, int prec) : F_(std::move(F)), prec_(prec) {
        if (prec_ < 1) throw precision_error("ring precision must be >= 1");
        p_ = (long)F_->p;
        mpz_ui_pow_ui(pN_.get_mpz_t(), (unsigned long)F_->p, (unsigned long)prec_);
    }

    const FieldContext& ctx() const { return *F_; }
    const FieldContextPtr& ctx_ptr() const { return F_; }
    int prec() const { return prec_; }
    const mpz_class& pN() const { return pN_; }
    int n() const { return F_->n; }
    long p() const { return p_; }

    zq_elem zero() const { return zq_elem(n()); }

    zq_elem one() const {
        zq_elem a(n());
        a[0] = 1;
        return a;
    }

    zq_elem from_int(long c) const {
        zq_elem a(n());
        a[0] = c;
        mpz_mod(a[0].get_mpz_t(), a[0].get_mpz_t(), pN_.get_mpz_t());
        return a;
    }

    zq_elem from_mpz(const mpz_class& c) const {
        zq_elem a(n());
        mpz_mod(a[0].get_mpz_t(), c.get_mpz_t(), pN_.get_mpz_t());
        return a;
    }

    // canonical digit lift: same {0..p-1} coefficients
    zq_elem from_fq(const fq_elem& a) const {
        zq_elem r(n());
        for (int i = 0; i < n(); ++i) r[i] = (long)a[i];
        return r;
    }

    fq_elem to_fq(const zq_elem& a) const {
        fq_elem r(n());
        for (int i = 0; i < n(); ++i) {
            mpz_class t;
            mpz_mod_ui(t.get_mpz_t(), a[i].get_mpz_t(), (unsigned long)F_->p);
            r[i] = (int64_t)mpz_get_si(t.get_mpz_t());
        }
        return r;
    }

    // generator T (for n = 1 this is 0, matching m = t handling)
    zq_elem gen() const {
        zq_elem a(n());
        if (n() > 1)
            a[1] = 1;
        else
            a[0] = F_->modulus[0] ? mpz_class(p_ - F_->modulus[0]) : mpz_class(0);
        return a;
    }

    bool is_zero(const zq_elem& a) const {
        for (auto& c : a)
            if (c != 0) return false;
        return true;
    }

    void reduce(zq_elem& a) const {
        for (auto& c : a) mpz_mod(c.get_mpz_t(), c.get_mpz_t(), pN_.get_mpz_t());
    }

    zq_elem add(const zq_elem& a, const zq_elem& b) const {
        zq_elem r(n());
        for (int i = 0; i < n(); ++i) {
            r[i] = a[i] + b[i];
            if (r[i] >= pN_) r[i] -= pN_;
        }
        return r;
    }

    zq_elem sub(const zq_elem& a, const zq_elem& b) const {
        zq_elem r(n());
        for (int i = 0; i < n(); ++i) {
            r[i] = a[i] - b[i];
            if (r[i] < 0) r[i] += pN_;
        }
        return r;
    }

    zq_elem neg(const zq_elem& a) const {
        zq_elem r(n());
        for (int i = 0; i < n(); ++i) r[i] = (a[i] == 0) ? mpz_class(0) : mpz_class(pN_ - a[i]);
        return r;
    }

    zq_elem mul(const zq_elem& a, const zq_elem& b) const {
        const int d = n();
        if (d == 1) {
            zq_elem r(1);
            r[0] = a[0] * b[0];
            mpz_mod(r[0].get_mpz_t(), r[0].get_mpz_t(), pN_.get_mpz_t());
            return r;
        }
        std::vector<mpz_class> c(2 * d - 1);
        for (int i = 0; i < d; ++i) {
            if (a[i] == 0) continue;
            for (int j = 0; j < d; ++j) c[i + j] += a[i] * b[j];
        }
        // reduce by the monic modulus M (small coefficients)
        for (int i = 2 * d - 2; i >= d; --i) {
            if (c[i] == 0) continue;
            for (int j = 0; j < d; ++j) {
                long mj = (long)F_->modulus[j];
                if (mj) c[i - d + j] -= c[i] * mj;
            }
            c[i] = 0;
        }
        zq_elem r(d);
        for (int i = 0; i < d; ++i) mpz_mod(r[i].get_mpz_t(), c[i].get_mpz_t(), pN_.get_mpz_t());
        return r;
    }

    zq_elem scalar_mul(const mpz_class& s, const zq_elem& a) const {
        zq_elem r(n());
        for (int i = 0; i < n(); ++i) {
            r[i] = s * a[i];
            mpz_mod(r[i].get_mpz_t(), r[i].get_mpz_t(), pN_.get_mpz_t());
        }
        return r;
    }

    zq_elem pow(const zq_elem& a, const mpz_class& e) const {
        zq_elem r = one(), b = a;
        mpz_class m = e;
        while (m > 0) {
            if (mpz_odd_p(m.get_mpz_t())) r = mul(r, b);
            b = mul(b, b);
            m >>= 1;
        }
        return r;
    }

    // p-adic valuation, capped at the ring precision
    int valuation(const zq_elem& a) const {
        int v = prec_;
        mpz_class tmp, pz(p_);
        for (auto& c : a) {
            if (c == 0) continue;
            int vc = (int)mpz_remove(tmp.get_mpz_t(), c.get_mpz_t(), pz.get_mpz_t());
            if (vc < v) v = vc;
            if (v == 0) break;
        }
        return v;
    }

    // exact division by p^s (caller guarantees divisibility)
    zq_elem shift_down(const zq_elem& a, int s) const {
        zq_elem r(n());
        mpz_class ps;
        mpz_ui_pow_ui(ps.get_mpz_t(), (unsigned long)p_, (unsigned long)s);
        for (int i = 0; i < n(); ++i) {
            assert(mpz_divisible_p(a[i].get_mpz_t(), ps.get_mpz_t()));
            mpz_divexact(r[i].get_mpz_t(), a[i].get_mpz_t(), ps.get_mpz_t());
        }
        return r;
    }

    zq_elem shift_up(const zq_elem& a, int s) const {
        mpz_class ps;
        mpz_ui_pow_ui(ps.get_mpz_t(), (unsigned long)p_, (unsigned long)s);
        zq_elem r(n());
        for (int i = 0; i < n(); ++i) {
            r[i] = a[i] * ps;
            mpz_mod(r[i].get_mpz_t(), r[i].get_mpz_t(), pN_.get_mpz_t());
        }
        return r;
    }

    // inverse of a unit, by lifting the residue-field inverse
    zq_elem inv(const zq_elem& a) const {
        fq_elem abar = to_fq(a);
        if (fq_is_zero(abar)) throw precision_error("inversion of a non-unit in Z_q");
        zq_elem w = from_fq(fq_inv(*F_, abar));
        int known = 1;
        while (known < prec_) {
            // w <- w(2 - a w)
            zq_elem t = mul(a, w);
            t = sub(from_int(2), t);
            w = mul(w, t);
            known *= 2;
        }
        return w;
    }

    zq_elem div(const zq_elem& a, const zq_elem& b) const { return mul(a, inv(b)); }

    // Teichmuller lift: the unique z with z = a mod p and z^q = z.
    zq_elem teichmuller(const fq_elem& a) const {
        if (fq_is_zero(a)) return zero();
        mpz_class q;
        mpz_ui_pow_ui(q.get_mpz_t(), (unsigned long)F_->p, (unsigned long)F_->n);
        zq_elem z = from_fq(a);
        int known = 1;
        while (known < prec_) {
            // z <- z - (z^q - z) / (q z^(q-1) - 1)
            zq_elem zq1 = pow(z, q - 1);
            zq_elem fz = sub(mul(zq1, z), z);
            zq_elem d = sub(scalar_mul(q, zq1), one());
            z = sub(z, mul(fz, inv(d)));
            known *= 2;
        }
        return z;
    }

    // sigma(T): unique root of the modulus congruent to T^p, computed once by
    // Newton iteration (write-once cache; safe for concurrent readers after
    // first use from a single thread).
    const zq_elem& sigma_gen() const {
        if (!sigma_cache_) {
            zq_elem z = pow(gen(), mpz_class(p_));
            int known = 1;
            while (known < prec_) {
                // z <- z - M(z)/M'(z)
                zq_elem mz = eval_modulus(z);
                zq_elem dz = eval_modulus_derivative(z);
                z = sub(z, mul(mz, inv(dz)));
                known *= 2;
            }
            sigma_cache_ = std::make_shared<const zq_elem>(std::move(z));
        }
        return *sigma_cache_;
    }

    // The ring automorphism lifting x -> x^p on F_q.
    zq_elem sigma(const zq_elem& a) const {
        if (n() == 1) return a;
        const zq_elem& s = sigma_gen();
        // Horner over the scalar coefficients of a
        zq_elem r(n());
        for (int i = n() - 1; i >= 0; --i) {
            r = mul(r, s);
            r[0] += a[i];
            if (r[0] >= pN_) r[0] -= pN_;
        }
        return r;
    }

    zq_elem sigma_iter(const zq_elem& a, int k) const {
        zq_elem r = a;
        k %= n();
        if (k < 0) k += n();
        for (int i = 0; i < k; ++i) r = sigma(r);
        return r;
    }

    // reduce an element into a lower-precision ring
    zq_elem to_ring(const ZqRing& target, const zq_elem& a) const {
        zq_elem r = a;
        target.reduce(r);
        return r;
    }

  private:
    zq_elem eval_modulus(const zq_elem& z) const {
        zq_elem r(n());
        for (int i = n(); i >= 0; --i) {
            r = mul(r, z);
            long mi = (long)F_->modulus[i];
            if (mi) {
                r[0] += mi;
                if (r[0] >= pN_) r[0] -= pN_;
            }
        }
        return r;
    }

    zq_elem eval_modulus_derivative(const zq_elem& z) const {
        zq_elem r(n());
        for (int i = n(); i >= 1; --i) {
            r = mul(r, z);
            mpz_class c((long)i * (long)F_->modulus[i]);
            if (c != 0) {
                r[0] += c;
                mpz_mod(r[0].get_mpz_t(), r[0].get_mpz_t(), pN_.get_mpz_t());
            }
        }
        return r;
    }

    FieldContextPtr F_;
    int prec_;
    long p_;
    mpz_class pN_;
    mutable std::shared_ptr<const zq_elem> sigma_cache_;
};

}  // namespace quartic_zeta
