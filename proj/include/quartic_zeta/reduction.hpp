#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "quartic_zeta/algebra.hpp"
#include "quartic_zeta/curve.hpp"
#include "quartic_zeta/scaled.hpp"

namespace quartic_zeta {

// x-offset of the elimination pivot for each y-row (index by l = 1..3):
// rule (l, k) reduces x^(k+ko[l]) y^l dx.
inline std::array<int, 4> pivot_offsets(CurveCase tag) {
    switch (tag) {
        case CurveCase::case1: return {0, 2, 2, 2};
        case CurveCase::case2: return {0, 2, 3, 3};
        case CurveCase::case3: return {0, 3, 2, 2};
        default: return {0, 3, 3, 3};
    }
}

// Monomial basis x^j y^i dx of H^1_dR, odd rows (i = 1, 3) first, then the
// even row (i = 2); x^j y^i is a basis element exactly when j < ko[i].
struct CohomologyBasis {
    std::vector<std::pair<int, int>> elems;  // (i, j)
    std::vector<int> odd_positions, even_positions;
    std::array<int, 4> ko{};

    int index_of(int i, int j) const {
        for (size_t s = 0; s < elems.size(); ++s)
            if (elems[s].first == i && elems[s].second == j) return (int)s;
        return -1;
    }
    bool is_basis(int i, int j) const { return i >= 1 && j < ko[i]; }
    int size() const { return (int)elems.size(); }
};

inline CohomologyBasis basis_for(CurveCase tag) {
    CohomologyBasis b;
    b.ko = pivot_offsets(tag);
    for (int j = 0; j < 3; ++j)
        for (int i : {1, 3})
            if (j < b.ko[i]) {
                b.odd_positions.push_back((int)b.elems.size());
                b.elems.emplace_back(i, j);
            }
    for (int j = 0; j < 3; ++j)
        if (j < b.ko[2]) {
            b.even_positions.push_back((int)b.elems.size());
            b.elems.emplace_back(2, j);
        }
    return b;
}

// One exact relation sum_terms c_(i,j) x^j y^i dx == 0 in cohomology, solved
// for the pivot monomial x^pivot_j y^pivot_i.
struct ReductionRule {
    int l = 0, k = 0;
    int pivot_i = 0, pivot_j = 0;
    ZqScaled pivot_coeff;
    std::vector<std::tuple<int, int, ZqScaled>> terms;  // includes the pivot
};

// Builds the Eq.-style relations from the curve coefficients, derives the
// per-case elimination rules, and reduces dx-forms onto the basis.
class ReductionEngine {
  public:
    // slash_budget bounds the denominators p^d that may appear while
    // reducing (N5 - N4 in pipeline use); exceeding it means the precision
    // schedule was violated.
    ReductionEngine(const LiftedCurve& C, ScaledRing S, int slash_budget = -1)
        : S_(std::move(S)), tag_(C.tag), basis_(basis_for(C.tag)) {
        budget_ = slash_budget < 0 ? S_.cap() : slash_budget;
        const ZqRing& R = S_.ring();
        for (int i = 0; i < 3; ++i) a_[i] = exact_coeff(R, C.a[i]);
        for (int j = 0; j < 5; ++j) b_[j] = exact_coeff(R, C.b[j]);
    }

    const ScaledRing& scaled() const { return S_; }
    const CohomologyBasis& basis() const { return basis_; }
    CurveCase tag() const { return tag_; }
    const std::array<ZqScaled, 3>& a() const { return a_; }
    const std::array<ZqScaled, 5>& b() const { return b_; }

    using RelMap = std::map<std::pair<int, int>, ZqScaled>;

    // Raw relation of the S_{l,k} exact form: y^l and y^(l+2) rows with the
    // Gamma coefficients, y^4/y^5 folded through f, the (exact) y^0 row
    // dropped. Valid for l = 1..3, k >= 0.
    RelMap gamma_relation(int l, int k) const {
        RelMap rel;
        auto addterm = [&](int i, int j, const ZqScaled& c) {
            if (c.is_exact_zero()) return;
            if (j < 0) {
                if (!c.is_zeroish())
                    throw assumption_error("negative-degree term in a reduction relation");
                return;
            }
            auto [it, fresh] = rel.emplace(std::make_pair(i, j), c);
            if (!fresh) it->second = S_.add(it->second, c);
        };
        for (int jp = -1; jp <= 3; ++jp) {
            long num = (long)(l + 4) * (jp + 1) + 4L * k;
            ZqScaled c = S_.mul(S_.from_rational(num, l + 4), b_[jp + 1]);
            addterm(l, k + jp, c);
        }
        for (int jp = -1; jp <= 1; ++jp) {
            long num = (long)l * ((long)(l + 4) * (jp + 1) + 2L * k);
            ZqScaled c = S_.mul(S_.from_rational(num, (long)(l + 2) * (l + 4)), a_[jp + 1]);
            if (c.is_exact_zero()) continue;
            if (l + 2 <= 3) {
                addterm(l + 2, k + jp, c);
            } else {
                int i0 = l + 2 - 4;  // fold y^(l+2) = -y^i0 (g y^2 + h)
                for (int dg = 0; dg <= 2; ++dg)
                    addterm(i0 + 2, k + jp + dg, S_.neg(S_.mul(c, a_[dg])));
                for (int dh = 0; dh <= 4; ++dh)
                    addterm(i0, k + jp + dh, S_.neg(S_.mul(c, b_[dh])));
            }
        }
        for (auto it = rel.begin(); it != rel.end();)
            it = (it->first.first == 0) ? rel.erase(it) : std::next(it);
        return rel;
    }

    // Case-appropriate elimination rule for x^(k+ko[l]) y^l dx. For l = 3 the
    // raw relation's high y^1 entries are cleared with l = 1 rules first.
    ReductionRule rule(int l, int k, bool m3_final_clear = true) const {
        RelMap rel = gamma_relation(l, k);
        if (l == 3) {
            int ko1 = basis_.ko[1];
            int top = ko1 == 3 ? k + 5 : k + 4;
            int bottom = m3_final_clear ? k + 2 : k + 3;
            for (int jj = top; jj >= bottom; --jj) {
                auto it = rel.find({1, jj});
                if (it == rel.end() || it->second.is_exact_zero()) continue;
                if (it->second.is_zeroish()) {
                    rel.erase(it);
                    continue;
                }
                int kk = jj - ko1;
                if (kk < 0) break;  // k = 0: the stray entry lands on a basis monomial
                apply_rule(rel, {1, jj}, rule(1, kk));
            }
        }
        ReductionRule r;
        r.l = l;
        r.k = k;
        r.pivot_i = l;
        r.pivot_j = k + basis_.ko[l];
        // entries beyond the pivot column must be provably zero (exact-zero
        // curve coefficients or the forced a2^2 - 4 b4 = 0 cancellation)
        long threshold = std::max<long>(1, S_.cap() - 40);
        for (auto it = rel.begin(); it != rel.end();) {
            const auto& [ij, c] = *it;
            if (ij.first == l && ij.second > r.pivot_j) {
                if (!c.is_zeroish() || c.val < threshold)
                    throw assumption_error("reduction rule has a nonzero entry above its pivot");
                it = rel.erase(it);
            } else if (c.is_exact_zero()) {
                it = rel.erase(it);
            } else {
                ++it;
            }
        }
        auto pit = rel.find({l, r.pivot_j});
        if (pit == rel.end() || pit->second.is_zeroish())
            throw assumption_error("reduction pivot vanished (smoothness assumption violated)");
        r.pivot_coeff = pit->second;
        for (auto& [ij, c] : rel) r.terms.emplace_back(ij.first, ij.second, c);
        return r;
    }

    // Reduce a normalized dx-only form to coordinates on the basis. y^0
    // terms are exact (x^j dx = d(x^(j+1)/(j+1))) and contribute nothing.
    std::vector<ZqScaled> reduce(ScaledForm w) const {
        for (int j = w.xcut; j-- > 0;) {
            for (int i = 1; i <= 3; ++i) {
                ZqScaled& c = w.rows[i][j];
                if (c.is_exact_zero() || basis_.is_basis(i, j)) continue;
                if (!c.is_zeroish() && c.val < -budget_)
                    throw precision_error(
                        "precision exhausted: reduction denominator exceeds the N5 headroom");
                int k = j - basis_.ko[i];
                ReductionRule r = rule(i, k);
                ZqScaled mu = S_.div(c, r.pivot_coeff);
                for (const auto& [ti, tj, tc] : r.terms) {
                    if (ti == i && tj == j) continue;
                    if (tj >= w.xcut) throw assumption_error("rule term beyond the working cut");
                    w.rows[ti][tj] = S_.sub(w.rows[ti][tj], S_.mul(mu, tc));
                }
                c = S_.exact_zero();
            }
        }
        std::vector<ZqScaled> out;
        out.reserve(basis_.elems.size());
        for (auto& [i, j] : basis_.elems) out.push_back(w.rows[i][j]);
        return out;
    }

    ScaledForm zero_form(int xcut) const {
        ScaledForm f;
        f.xcut = xcut;
        for (auto& r : f.rows) r.assign(xcut, S_.exact_zero());
        return f;
    }

  private:
    static ZqScaled exact_coeff(const ZqRing& R, const zq_elem& c) {
        zq_elem cc = c;
        R.reduce(cc);
        ScaledRing S(R);  // cheap wrapper; same ring data
        if (R.is_zero(cc)) return ZqScaled{};  // exact zero
        return S.from_residue(cc, R.prec());
    }

    void apply_rule(RelMap& rel, std::pair<int, int> key, const ReductionRule& r) const {
        ZqScaled c = rel.at(key);
        ZqScaled mu = S_.div(c, r.pivot_coeff);
        for (const auto& [ti, tj, tc] : r.terms) {
            if (ti == key.first && tj == key.second) continue;
            auto [it, fresh] = rel.emplace(std::make_pair(ti, tj), S_.exact_zero());
            it->second = S_.sub(it->second, S_.mul(mu, tc));
        }
        rel.erase(key);
    }

    ScaledRing S_;
    CurveCase tag_;
    CohomologyBasis basis_;
    int budget_ = 0;
    std::array<ZqScaled, 3> a_;
    std::array<ZqScaled, 5> b_;
};

// Compare the engine-derived rules against the printed closed forms of the
// reduction matrices; returns human-readable mismatches (empty = pass).
// Entries the text leaves as "*" are engine-derived only and not compared.
inline std::vector<std::string> validate_closed_forms(const ReductionEngine& E, int kmin,
                                                      int kmax) {
    std::vector<std::string> errs;
    const ScaledRing& S = E.scaled();
    const auto& a = E.a();
    const auto& b = E.b();
    long tol = std::max<long>(1, S.cap() - 40);
    bool b4_nonzero = basis_for(E.tag()).ko[1] == 3;

    auto geti = [&](const ReductionRule& r, int i, int j) {
        for (auto& [ti, tj, tc] : r.terms)
            if (ti == i && tj == j) return tc;
        return S.exact_zero();
    };
    auto expect = [&](int k, const std::string& what, const ZqScaled& got,
                      const ZqScaled& want) {
        ZqScaled d = S.sub(got, want);
        if (!d.is_zeroish() || (!d.is_exact_zero() && d.val < tol))
            errs.push_back("k=" + std::to_string(k) + ": mismatch in " + what);
    };
    auto rat = [&](long n, long d) { return S.from_rational(n, d); };

    for (int k = kmin; k <= kmax; ++k) {
        {  // M_{1,k}, both rows, all entries
            ReductionRule r1 = E.rule(1, k);
            for (int c = 0; c <= 4; ++c)
                expect(k, "M1 y-row col " + std::to_string(c), geti(r1, 1, k - 1 + c),
                       S.mul(rat(12L * k + 15L * c, 15), b[c]));
            for (int c = 0; c <= 2; ++c)
                expect(k, "M1 y^3-row col " + std::to_string(c), geti(r1, 3, k - 1 + c),
                       S.mul(rat(2L * k + 5L * c, 15), a[c]));
            for (auto& [ti, tj, tc] : r1.terms)
                if (ti != 1 && ti != 3) errs.push_back("M1 has a row outside {y, y^3}");
        }
        {  // M_{2,k}: the single y^2 row
            ReductionRule r2 = E.rule(2, k);
            auto aa = [&](int i, int j) { return S.mul(a[i], a[j]); };
            ZqScaled e0 = S.sub(aa(0, 0), S.mul_int(b[0], 4));
            ZqScaled e1 = S.sub(S.mul(a[0], a[1]), S.mul_int(b[1], 2));
            ZqScaled e2 = S.sub(S.add(aa(1, 1), S.mul_int(aa(0, 2), 2)), S.mul_int(b[2], 4));
            ZqScaled e3 = S.sub(S.mul(a[1], a[2]), S.mul_int(b[3], 2));
            ZqScaled e4 = S.sub(aa(2, 2), S.mul_int(b[4], 4));
            expect(k, "M2 col k-1", geti(r2, 2, k - 1), S.mul(rat(-(long)k, 6), e0));
            expect(k, "M2 col k", geti(r2, 2, k), S.mul(rat(-(2L * k + 3), 6), e1));
            expect(k, "M2 col k+1", geti(r2, 2, k + 1), S.mul(rat(-((long)k + 3), 6), e2));
            expect(k, "M2 col k+2", geti(r2, 2, k + 2), S.mul(rat(-(2L * k + 9), 6), e3));
            expect(k, "M2 col k+3", geti(r2, 2, k + 3), S.mul(rat(-((long)k + 6), 6), e4));
            for (auto& [ti, tj, tc] : r2.terms)
                if (ti != 2) errs.push_back("M2 has a row outside {y^2}");
        }
        if (b4_nonzero) {  // M_{3,k}, b4 != 0 branch
            ReductionRule r3 = E.rule(3, k);
            ZqScaled disc = S.sub(S.mul(a[2], a[2]), S.mul_int(b[4], 4));
            expect(k, "M3 (4,6)", geti(r3, 3, k + 3),
                   S.mul(rat(-((long)k + 7), 7), disc));
            //  (4,5) = -((8k+44) a1 a2 b4 - a2^2 b3 - (16k+84) b3 b4) / (28 b4)
            ZqScaled num = S.sub(
                S.sub(S.mul_int(S.mul(S.mul(a[1], a[2]), b[4]), 8L * k + 44),
                      S.mul(S.mul(a[2], a[2]), b[3])),
                S.mul_int(S.mul(b[3], b[4]), 16L * k + 84));
            expect(k, "M3 (4,5)", geti(r3, 3, k + 2),
                   S.neg(S.div(num, S.mul_int(b[4], 28))));
            // scalar check: c^-1 M3 = -2688 (k+4)(k+5)(k+6) b4^3 M3 is integral
            ZqScaled cinv = S.mul_int(S.mul(S.mul(b[4], b[4]), b[4]),
                                      -2688L * (k + 4) * (k + 5) * (k + 6));
            for (auto& [ti, tj, tc] : r3.terms) {
                ZqScaled scaled_entry = S.mul(tc, cinv);
                if (!scaled_entry.is_zeroish() && scaled_entry.val < 0)
                    errs.push_back("k=" + std::to_string(k) +
                                   ": c^-1 M3 entry is not integral");
            }
            // intermediate M'_3: the (2,5) stray entry before the final clear
            // (cross-checked against an independent symbolic derivation)
            ReductionRule r3p = E.rule(3, k, /*m3_final_clear=*/false);
            auto cube = [&](const ZqScaled& x) { return S.mul(S.mul(x, x), x); };
            ZqScaled br = S.exact_zero();
            br = S.add(br, S.mul_int(S.mul(a[2], cube(b[3])),
                                     16L * k * k + 136L * k + 285));
            br = S.sub(br, S.mul_int(S.mul(S.mul(S.mul(a[2], b[2]), b[3]), b[4]),
                                     8L * (6L * k * k + 56L * k + 125)));
            ZqScaled b4sq = S.mul(b[4], b[4]);
            br = S.add(br, S.mul_int(S.mul(S.mul(a[2], b[1]), b4sq),
                                     48L * (1L * k * k + 11L * k + 30)));
            br = S.add(br, S.mul_int(S.mul(S.mul(a[0], b[3]), b4sq),
                                     16L * (1L * k * k + 6L * k)));
            br = S.sub(br, S.mul_int(S.mul(S.mul(a[1], S.mul(b[3], b[3])), b[4]),
                                     2L * (8L * k * k + 58L * k + 105)));
            br = S.add(br, S.mul_int(S.mul(S.mul(a[1], b[2]), b4sq),
                                     16L * (2L * k * k + 17L * k + 35)));
            ZqScaled want25 = S.neg(S.div(
                S.mul_int(S.mul(br, b[4]), 36L * (k + 4)),
                S.mul_int(cube(b[4]), 2688L * (k + 4) * (k + 5) * (k + 6))));
            expect(k, "M'3 (2,5)", geti(r3p, 1, k + 2), want25);
        } else {  // M_{3,k}, b4 = 0 branch
            ReductionRule r3 = E.rule(3, k);
            expect(k, "M3 (4,6) [b4=0]", geti(r3, 3, k + 3),
                   S.mul(rat(-2L * (k + 7) * (2L * k + 11), 7L * (4L * k + 23)),
                         S.mul(a[2], a[2])));
            // (4,5) = -((32k^3+504k^2+2648k+4641) a1 a2 b3
            //          - (4k^2+52k+168) a2^2 b2
            //          - (64k^3+1008k^2+5276k+9177) b3^2) / (7 (4k+19)(4k+23) b3)
            long kk = k;
            ZqScaled num = S.exact_zero();
            num = S.add(num, S.mul_int(S.mul(S.mul(a[1], a[2]), b[3]),
                                       32L * kk * kk * kk + 504L * kk * kk + 2648L * kk + 4641));
            num = S.sub(num, S.mul_int(S.mul(S.mul(a[2], a[2]), b[2]),
                                       4L * kk * kk + 52L * kk + 168));
            num = S.sub(num, S.mul_int(S.mul(b[3], b[3]),
                                       64L * kk * kk * kk + 1008L * kk * kk + 5276L * kk + 9177));
            expect(k, "M3 (4,5) [b4=0]", geti(r3, 3, k + 2),
                   S.neg(S.div(num, S.mul_int(b[3], 7L * (4 * kk + 19) * (4 * kk + 23)))));
            // scalar check: c^-1 M3 = -7 (4k+15)(4k+19)(4k+23) b3^2 M3 is integral
            ZqScaled cinv = S.mul_int(S.mul(b[3], b[3]),
                                      -7L * (4 * kk + 15) * (4 * kk + 19) * (4 * kk + 23));
            for (auto& [ti, tj, tc] : r3.terms) {
                ZqScaled scaled_entry = S.mul(tc, cinv);
                if (!scaled_entry.is_zeroish() && scaled_entry.val < 0)
                    errs.push_back("k=" + std::to_string(k) +
                                   ": c^-1 M3 entry is not integral [b4=0]");
            }
        }
    }
    return errs;
}

}  // namespace quartic_zeta
