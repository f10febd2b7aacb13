#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "quartic_zeta/zq.hpp"

namespace quartic_zeta {

// Element of Q_q as p^val * unit with honest precision bookkeeping:
//  - nonzero: rel >= 1, unit is a p-adic unit known to relative precision
//    rel (stored mod p^W of the owning ScaledRing); value known mod
//    p^(val+rel).
//  - inexact zero: rel = 0, unit empty; the value is O(p^val).
//  - exact zero: rel = 0, val = kExactZero.
struct ZqScaled {
    static constexpr std::int64_t kExactZero = std::numeric_limits<std::int64_t>::max();

    std::int64_t val = kExactZero;
    std::int64_t rel = 0;
    zq_elem unit;

    bool is_exact_zero() const { return rel == 0 && val == kExactZero; }
    bool is_zeroish() const { return rel == 0; }
    std::int64_t abs_prec() const { return rel == 0 ? val : val + rel; }
};

// Operations on ZqScaled over a fixed unit-storage ring Z_q/p^W. W is the
// reduction-matrix precision N5 of the schedule; absolute precisions of the
// tracked values stay at or below W in all pipeline uses.
class ScaledRing {
  public:
    explicit ScaledRing(ZqRing ring) : R_(std::move(ring)) {}

    const ZqRing& ring() const { return R_; }
    int cap() const { return R_.prec(); }

    ZqScaled exact_zero() const { return ZqScaled{}; }

    ZqScaled zeroish(std::int64_t abs) const {
        ZqScaled z;
        z.val = abs;
        z.rel = 0;
        return z;
    }

    // value p^val * unit with the unit part known mod p^rel
    ZqScaled make(std::int64_t val, zq_elem unit, std::int64_t rel) const {
        ZqScaled z;
        z.val = val;
        z.rel = std::min<std::int64_t>(rel, cap());
        z.unit = std::move(unit);
        if (z.rel <= 0) return zeroish(val + std::max<std::int64_t>(z.rel, 0));
        return z;
    }

    // interpret a residue known mod p^abs (0 <= abs <= W)
    ZqScaled from_residue(const zq_elem& a, std::int64_t abs) const {
        int v = R_.valuation(a);
        if (v >= abs) return zeroish(abs);
        return make(v, v ? R_.shift_down(a, v) : a, abs - v);
    }

    ZqScaled from_int(long c) const {
        if (c == 0) return exact_zero();
        return from_residue(R_.from_int(c), cap());
    }

    // num/den for small exact rationals (den nonzero)
    ZqScaled from_rational(long num, long den) const {
        return div(from_int(num), from_int(den));
    }

    ZqScaled from_zq_exact(const zq_elem& a) const { return from_residue(a, cap()); }

    bool is_unit_value(const ZqScaled& a) const { return !a.is_zeroish() && a.val == 0; }

    ZqScaled add(const ZqScaled& a, const ZqScaled& b) const {
        if (a.is_exact_zero()) return b;
        if (b.is_exact_zero()) return a;
        std::int64_t abs = std::min(a.abs_prec(), b.abs_prec());
        if (a.is_zeroish() && b.is_zeroish()) return zeroish(abs);
        if (a.is_zeroish()) return clip_abs(b, abs);
        if (b.is_zeroish()) return clip_abs(a, abs);
        std::int64_t v = std::min(a.val, b.val);
        zq_elem u = R_.add(R_.shift_up(a.unit, (int)(a.val - v)),
                           R_.shift_up(b.unit, (int)(b.val - v)));
        std::int64_t known = abs - v;  // >= 1
        int s = R_.valuation(u);
        if (s >= known) return zeroish(abs);
        return make(v + s, s ? R_.shift_down(u, s) : u, known - s);
    }

    ZqScaled neg(const ZqScaled& a) const {
        if (a.is_zeroish()) return a;
        ZqScaled r = a;
        r.unit = R_.neg(a.unit);
        return r;
    }

    ZqScaled sub(const ZqScaled& a, const ZqScaled& b) const { return add(a, neg(b)); }

    ZqScaled mul(const ZqScaled& a, const ZqScaled& b) const {
        if (a.is_exact_zero() || b.is_exact_zero()) return exact_zero();
        if (a.is_zeroish() || b.is_zeroish()) {
            // O(p^A) * (p^v u) = O(p^(A+v)); O(p^A)*O(p^B) = O(p^(A+B))
            return zeroish(a.val + b.val);
        }
        return make(a.val + b.val, R_.mul(a.unit, b.unit), std::min(a.rel, b.rel));
    }

    ZqScaled mul_int(const ZqScaled& a, long c) const { return mul(a, from_int(c)); }

    ZqScaled inv(const ZqScaled& a) const {
        if (a.is_zeroish())
            throw precision_error("precision exhausted: inverting a value indistinguishable from 0");
        return make(-a.val, R_.inv(a.unit), a.rel);
    }

    ZqScaled div(const ZqScaled& a, const ZqScaled& b) const { return mul(a, inv(b)); }

    ZqScaled sigma(const ZqScaled& a) const {
        if (a.is_zeroish()) return a;
        ZqScaled r = a;
        r.unit = R_.sigma(a.unit);
        return r;
    }

    ZqScaled sigma_iter(const ZqScaled& a, int k) const {
        if (a.is_zeroish()) return a;
        ZqScaled r = a;
        r.unit = R_.sigma_iter(a.unit, k);
        return r;
    }

    // is the value 0 to its own working precision?
    bool is_zero_at_precision(const ZqScaled& a) const { return a.is_zeroish(); }

    // residue mod p^target of an integral value (val >= 0 required)
    zq_elem to_residue(const ZqScaled& a, int target, const ZqRing& out) const {
        if (a.is_zeroish()) {
            if (!a.is_exact_zero() && a.val < target)
                throw precision_error("precision insufficient to read residue");
            return out.zero();
        }
        if (a.val < 0) throw precision_error("value is not p-integral");
        if (a.abs_prec() < target) throw precision_error("precision insufficient to read residue");
        zq_elem u = a.unit;
        out.reduce(u);
        return out.shift_up(u, (int)a.val);
    }

    // equality of values to precision min(abs prec, k)
    bool eq_mod(const ZqScaled& a, const ZqScaled& b, std::int64_t k) const {
        ZqScaled d = sub(a, b);
        if (d.is_zeroish()) return true;
        return d.val >= k;
    }

    std::string to_string(const ZqScaled& a) const {
        if (a.is_exact_zero()) return "0";
        if (a.is_zeroish()) return "O(p^" + std::to_string(a.val) + ")";
        std::string s = "p^" + std::to_string(a.val) + "*[";
        for (int i = 0; i < R_.n(); ++i) s += (i ? "," : "") + a.unit[i].get_str();
        return s + "] (rel " + std::to_string(a.rel) + ")";
    }

  private:
    ZqScaled clip_abs(const ZqScaled& a, std::int64_t abs) const {
        if (a.val >= abs) return zeroish(abs);
        ZqScaled r = a;
        r.rel = abs - a.val;
        return r;
    }

    ZqRing R_;
};

}  // namespace quartic_zeta
