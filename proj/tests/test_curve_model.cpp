#include <catch2/catch_amalgamated.hpp>

#include "quartic_zeta/curve.hpp"
#include "quartic_zeta/extension.hpp"
#include "test_support.hpp"

using namespace quartic_zeta;
using testsupport::random_smooth_curve;

namespace {

CurveInput make_curve(const FieldContextPtr& ctx, std::array<int64_t, 3> g,
                      std::array<int64_t, 5> h) {
    CurveInput in;
    in.ctx = ctx;
    for (int i = 0; i < 3; ++i) in.gbar[i] = fq_from_int(*ctx, g[i]);
    for (int j = 0; j < 5; ++j) in.hbar[j] = fq_from_int(*ctx, h[j]);
    return in;
}

}  // namespace

TEST_CASE("classify") {
    auto F7 = build_context(7, 1);
    CHECK(classify(make_curve(F7, {1, 2, 0}, {1, 0, 0, 3, 0})) == CurveCase::case1);
    // a2=4, b4=4 over F_7: a2^2 - 4 b4 = 0
    CHECK(classify(make_curve(F7, {0, 1, 4}, {1, 0, 0, 3, 4})) == CurveCase::case3);
    CHECK(classify(make_curve(F7, {0, 0, 0}, {1, 0, 0, 3, 1})) == CurveCase::case4);
    CHECK(classify(make_curve(F7, {0, 0, 3}, {1, 0, 0, 3, 0})) == CurveCase::case2);
}

TEST_CASE("smoothness rejections") {
    auto F7 = build_context(7, 1);
    // y^4 + x^4: singular at the origin
    auto sing = make_curve(F7, {0, 0, 0}, {0, 0, 0, 0, 1});
    auto rep = check_smoothness(sing);
    REQUIRE(rep.has_value());

    // Case 1 with b3 = 0 violates the infinity condition
    auto c1 = make_curve(F7, {1, 0, 0}, {1, 1, 1, 0, 0});
    rep = check_smoothness(c1);
    REQUIRE(rep.has_value());
    CHECK(rep->find("b3") != std::string::npos);

    CHECK_THROWS_AS(lift_curve(sing, fast_profile(7, 1)), singular_curve_error);
}

TEST_CASE("smoothness agrees with brute-force scan") {
    auto F7 = build_context(7, 1);
    std::mt19937_64 rng(2024);
    for (CurveCase tag : {CurveCase::case1, CurveCase::case2, CurveCase::case3,
                          CurveCase::case4}) {
        CurveInput in = random_smooth_curve(F7, tag, rng);
        // scan all affine points over F_{7^3} for common zeros of f, f_x, f_y
        auto E = extension_field(F7, 3);
        const FieldContext& F = *E.dst;
        std::array<fq_elem, 3> g;
        std::array<fq_elem, 5> h;
        for (int i = 0; i < 3; ++i) g[i] = E.map(in.gbar[i]);
        for (int j = 0; j < 5; ++j) h[j] = E.map(in.hbar[j]);
        bool found = false;
        for (uint64_t xi = 0; xi < F.q() && !found; ++xi) {
            fq_elem x = fq_from_index(F, xi);
            fq_elem gx = fq_add(F, fq_mul(F, fq_add(F, fq_mul(F, g[2], x), g[1]), x), g[0]);
            fq_elem gpx = fq_add(F, fq_scalar_mul(F, 2, fq_mul(F, g[2], x)), g[1]);
            fq_elem hx = h[4], hpx = fq_zero(F);
            for (int j = 3; j >= 0; --j) hx = fq_add(F, fq_mul(F, hx, x), h[j]);
            for (int j = 4; j >= 1; --j) {
                hpx = fq_mul(F, hpx, x);
                hpx = fq_add(F, hpx, fq_scalar_mul(F, j, h[j]));
            }
            for (uint64_t yi = 0; yi < F.q(); ++yi) {
                fq_elem y = fq_from_index(F, yi);
                fq_elem y2 = fq_mul(F, y, y);
                fq_elem fv = fq_add(F, fq_add(F, fq_mul(F, y2, y2), fq_mul(F, gx, y2)), hx);
                if (!fq_is_zero(fv)) continue;
                fq_elem fyv = fq_mul(F, y, fq_add(F, fq_scalar_mul(F, 4, y2), fq_scalar_mul(F, 2, gx)));
                if (!fq_is_zero(fyv)) continue;
                fq_elem fxv = fq_add(F, fq_mul(F, gpx, y2), hpx);
                if (fq_is_zero(fxv)) {
                    found = true;
                    break;
                }
            }
        }
        CHECK_FALSE(found);
    }
}

TEST_CASE("lift_curve per-case exactness") {
    auto F7 = build_context(7, 1);
    auto profile = fast_profile(7, 1);
    ZqRing R(F7, profile.N5);
    std::mt19937_64 rng(11);

    auto c1 = lift_curve(random_smooth_curve(F7, CurveCase::case1, rng), profile);
    CHECK(R.is_zero(c1.a[2]));
    CHECK(R.is_zero(c1.b[4]));

    // Case 3 over F_7 with a2 = 4, b4 = 4
    auto in3 = make_curve(F7, {1, 3, 4}, {2, 1, 5, 3, 4});
    if (check_smoothness(in3)) in3 = random_smooth_curve(F7, CurveCase::case3, rng);
    auto c3 = lift_curve(in3, profile);
    zq_elem disc = R.sub(R.mul(c3.a[2], c3.a[2]), R.scalar_mul(mpz_class(4), c3.b[4]));
    CHECK(R.is_zero(disc));                      // exactly 0 at full N5 precision
    CHECK(R.valuation(c3.b[4]) == 0);            // still a unit
    CHECK(R.to_fq(c3.b[4]) == in3.hbar[4]);      // still lifts b4bar

    auto c4 = lift_curve(random_smooth_curve(F7, CurveCase::case4, rng), profile);
    zq_elem disc4 = R.sub(R.mul(c4.a[2], c4.a[2]), R.scalar_mul(mpz_class(4), c4.b[4]));
    CHECK(R.valuation(disc4) == 0);  // a unit

    // lifting preserves the case and the residues
    for (auto tag : {CurveCase::case1, CurveCase::case2, CurveCase::case3, CurveCase::case4}) {
        auto in = random_smooth_curve(F7, tag, rng);
        auto L = lift_curve(in, profile);
        CurveInput red;
        red.ctx = F7;
        for (int i = 0; i < 3; ++i) red.gbar[i] = R.to_fq(L.a[i]);
        for (int j = 0; j < 5; ++j) red.hbar[j] = R.to_fq(L.b[j]);
        for (int i = 0; i < 3; ++i) CHECK(red.gbar[i] == in.gbar[i]);
        for (int j = 0; j < 5; ++j) CHECK(red.hbar[j] == in.hbar[j]);
        CHECK(classify(red) == tag);
        // Assumption: every coefficient is 0 or a unit
        for (int i = 0; i < 3; ++i)
            CHECK((R.is_zero(L.a[i]) || R.valuation(L.a[i]) == 0));
        for (int j = 0; j < 5; ++j)
            CHECK((R.is_zero(L.b[j]) || R.valuation(L.b[j]) == 0));
    }
}

TEST_CASE("infinity data per case") {
    auto F7 = build_context(7, 1);
    std::mt19937_64 rng(5150);

    auto d1 = infinity_data(random_smooth_curve(F7, CurveCase::case1, rng));
    CHECK(d1.delta_C == 1);
    CHECK(d1.delta_E == 1);
    CHECK(d1.R_C == ipoly{1});
    CHECK(d1.R_E == ipoly{1});

    auto d2 = infinity_data(random_smooth_curve(F7, CurveCase::case2, rng));
    CHECK(d2.delta_C == 3);
    CHECK(d2.delta_E == 2);
    CHECK((int)d2.R_C.size() == 3);  // degree delta_C - 1 = 2

    auto d3 = infinity_data(random_smooth_curve(F7, CurveCase::case3, rng));
    CHECK(d3.delta_C == 2);
    CHECK(d3.delta_E == 1);

    auto d4 = infinity_data(random_smooth_curve(F7, CurveCase::case4, rng));
    CHECK(d4.delta_C == 4);
    CHECK(d4.delta_E == 2);

    for (auto tag : {CurveCase::case1, CurveCase::case2, CurveCase::case3, CurveCase::case4}) {
        auto in = random_smooth_curve(F7, tag, rng);
        auto d = infinity_data(in);
        auto [dc, de] = expected_deltas(tag);
        CHECK(d.delta_C == dc);
        CHECK(d.delta_E == de);
        int sum = 0;
        for (int s : d.orbits_C) sum += s;
        CHECK(sum == d.delta_C);
        CHECK((int)d.R_C.size() == d.delta_C);  // degree delta_C - 1
        CHECK(d.R_C.back() == 1);               // monic
    }
}

TEST_CASE("irreducible quartic at infinity gives a length-4 orbit") {
    auto F7 = build_context(7, 1);
    FqField K{F7};
    // search a2, b4 with phi = w^4 + a2 w^2 + b4 irreducible over F_7
    for (int64_t a2 = 0; a2 < 7; ++a2) {
        for (int64_t b4 = 1; b4 < 7; ++b4) {
            poly<FqField> phi{fq_from_int(*F7, b4), fq_zero(*F7), fq_from_int(*F7, a2),
                              fq_zero(*F7), fq_one(*F7)};
            auto orb = poly_orbit_sizes(K, phi);
            if (orb == std::vector<int>{4}) {
                CurveInput in = make_curve(F7, {0, 0, a2}, {1, 2, 3, 1, b4});
                auto d = infinity_data(in);
                CHECK(d.orbits_C == std::vector<int>{4});
                // R_C = (X^4 - q^4)/(X - q) = X^3 + q X^2 + q^2 X + q^3
                ipoly expect{343, 49, 7, 1};
                CHECK(d.R_C == expect);
                return;
            }
        }
    }
    FAIL("no irreducible quartic of the required shape over F_7");
}
