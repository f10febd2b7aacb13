#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "quartic_zeta/frobenius.hpp"
#include "test_support.hpp"

using namespace quartic_zeta;
using testsupport::random_smooth_curve;

TEST_CASE("Bezout cofactors: identity, parity, degree bounds") {
    std::mt19937_64 rng(1009);
    std::vector<FieldContextPtr> fields{build_context(7, 1), build_context(3, 2),
                                        build_context(7, 2, {1, 0, 1}), build_context(13, 1)};
    for (auto& ctx : fields) {
        for (auto tag : {CurveCase::case1, CurveCase::case2, CurveCase::case3,
                         CurveCase::case4}) {
            CurveInput in;
            try {
                in = random_smooth_curve(ctx, tag, rng);
            } catch (const std::runtime_error&) {
                continue;
            }
            BezoutPair bz = solve_bezout(in);  // verifies the identity internally
            // alpha odd / beta even in y, total degree <= 5
            for (int i = 0; i < 6; i += 2) CHECK(poly_is_zero(bz.alpha[i]));
            for (int i = 1; i < 6; i += 2) CHECK(poly_is_zero(bz.beta[i]));
            for (int i = 0; i < 6; ++i) {
                if (!poly_is_zero(bz.alpha[i])) CHECK(i + poly_deg(bz.alpha[i]) <= 5);
                if (!poly_is_zero(bz.beta[i])) CHECK(i + poly_deg(bz.beta[i]) <= 5);
            }
        }
    }
}

TEST_CASE("Frobenius lift: residual, parity, decay") {
    std::mt19937_64 rng(1013);
    auto ctx = build_context(7, 1);
    auto prof = fast_profile(7, 1);
    for (auto tag : {CurveCase::case1, CurveCase::case3, CurveCase::case4}) {
        auto in = random_smooth_curve(ctx, tag, rng);
        auto curve = lift_curve(in, prof);
        auto bz = solve_bezout(in);
        FrobeniusData D = build_frobenius(curve, bz, prof);  // residual + parity enforced

        const ZqRing& R = D.ring.zq();
        // Z0 = 0 mod p
        bool pos = true;
        for (int i = 0; i < 4 && pos; ++i)
            for (int j = 0; j < D.ring.xcut() && pos; ++j) {
                zq_elem c = D.ring.coeff(D.Z0, i, j);
                if (!R.is_zero(c) && R.valuation(c) < 1) pos = false;
            }
        CHECK(pos);

        // Fx = x^p mod p
        AlgebraElement diff = D.ring.sub(D.Fx, D.ring.monomial(0, 7, R.one()));
        bool fx_ok = true;
        for (int i = 0; i < 4 && fx_ok; ++i)
            for (int j = 0; j < D.ring.xcut() && fx_ok; ++j) {
                zq_elem c = D.ring.coeff(diff, i, j);
                if (!R.is_zero(c) && R.valuation(c) < 1) fx_ok = false;
            }
        CHECK(fx_ok);

        CHECK(check_Z0_decay(D));

        ScaledRing S(ZqRing(ctx, prof.N5));
        ReductionEngine E(curve, S);
        for (int l : {1, 2, 3})
            for (int k = 0; k <= 2; ++k) {
                ScaledForm w = frobenius_form(k, l, D, S, E.a(), E.b());
                CHECK(check_form_decay(w, 7));
                // parity of the pullback form
                if (l % 2 == 1) {
                    for (int j = 0; j < w.xcut; ++j) {
                        CHECK(w.rows[0][j].is_zeroish());
                        CHECK(w.rows[2][j].is_zeroish());
                    }
                } else {
                    for (int j = 0; j < w.xcut; ++j) {
                        CHECK(w.rows[1][j].is_zeroish());
                        CHECK(w.rows[3][j].is_zeroish());
                    }
                }
            }
    }
}

TEST_CASE("Frobenius lift over an extension field") {
    std::mt19937_64 rng(1021);
    auto ctx = build_context(7, 2, {1, 0, 1});
    auto prof = fast_profile(7, 2);
    auto in = random_smooth_curve(ctx, CurveCase::case4, rng);
    auto curve = lift_curve(in, prof);
    auto bz = solve_bezout(in);
    FrobeniusData D = build_frobenius(curve, bz, prof);
    CHECK(check_Z0_decay(D));
}
