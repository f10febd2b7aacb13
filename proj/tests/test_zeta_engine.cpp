#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "quartic_zeta/pipeline.hpp"
#include "test_support.hpp"

using namespace quartic_zeta;
using testsupport::random_smooth_curve;

TEST_CASE("charpoly via the division-free recursion") {
    auto ctx = build_context(7, 1);
    ScaledRing S(ZqRing(ctx, 12));
    // [[2,3],[5,7]]: X^2 - 9X - 1
    FrobeniusMatrix A;
    A.dim = 2;
    A.basis = basis_for(CurveCase::case1);
    A.e = {S.from_int(2), S.from_int(3), S.from_int(5), S.from_int(7)};
    auto cp = charpoly(S, A);
    REQUIRE(cp.size() == 3);
    CHECK(S.eq_mod(cp[0], S.from_int(1), 10));
    CHECK(S.eq_mod(cp[1], S.from_int(-9), 10));
    CHECK(S.eq_mod(cp[2], S.from_int(-1), 10));

    // 3x3 with a known determinant and trace
    FrobeniusMatrix B;
    B.dim = 3;
    B.basis = A.basis;
    long vals[9] = {1, 2, 0, 3, 1, 4, 0, 5, 2};
    B.e.resize(9);
    for (int i = 0; i < 9; ++i) B.e[i] = S.from_int(vals[i]);
    auto cp3 = charpoly(S, B);
    REQUIRE(cp3.size() == 4);
    // trace = 4, det = 1*(2-20) - 2*(6-0) + 0 = -30
    CHECK(S.eq_mod(cp3[1], S.from_int(-4), 10));
    CHECK(S.eq_mod(cp3[3], S.from_int(30), 10));  // (-1)^3 det
}

TEST_CASE("twisted norm: n = 1 identity and n = 3 split vs direct") {
    auto ctx1 = build_context(7, 1);
    ScaledRing S1(ZqRing(ctx1, 10));
    FrobeniusMatrix M;
    M.dim = 2;
    M.basis = basis_for(CurveCase::case1);
    M.e = {S1.from_int(4), S1.from_int(9), S1.from_int(1), S1.from_int(6)};
    FrobeniusMatrix Mq = twisted_norm(S1, M, 1);
    for (int i = 0; i < 4; ++i) CHECK(S1.eq_mod(Mq.e[i], M.e[i], 9));

    auto ctx3 = build_context(7, 3);
    ScaledRing S(ZqRing(ctx3, 10));
    std::mt19937_64 rng(9001);
    FrobeniusMatrix A;
    A.dim = 4;
    A.basis = basis_for(CurveCase::case1);
    A.e.resize(16);
    for (auto& x : A.e) {
        zq_elem c(3);
        for (int t = 0; t < 3; ++t) c[t] = (long)(rng() % 100000);
        ZqRing R(ctx3, 10);
        R.reduce(c);
        x = S.from_residue(c, 10);
    }
    // direct 3-term product M sigma(M) sigma^2(M)
    FrobeniusMatrix direct =
        matrix_mul(S, matrix_mul(S, A, matrix_sigma(S, A, 1)), matrix_sigma(S, A, 2));
    FrobeniusMatrix split = twisted_norm(S, A, 3);
    for (int i = 0; i < 16; ++i) CHECK(S.eq_mod(split.e[i], direct.e[i], 8));

    // associativity property: N_3 = N_2 sigma^2(N_1) = N_1 sigma(N_2)
    FrobeniusMatrix n2 = matrix_mul(S, A, matrix_sigma(S, A, 1));
    FrobeniusMatrix v1 = matrix_mul(S, n2, matrix_sigma(S, A, 2));
    FrobeniusMatrix v2 = matrix_mul(S, A, matrix_sigma(S, n2, 1));
    for (int i = 0; i < 16; ++i) CHECK(S.eq_mod(v1.e[i], v2.e[i], 8));
}

TEST_CASE("end-to-end: engine P matches the oracle on F_7") {
    std::mt19937_64 rng(42001);
    auto ctx = build_context(7, 1);
    auto prof = fast_profile(7, 1);
    for (auto tag : {CurveCase::case1, CurveCase::case2, CurveCase::case3, CurveCase::case4}) {
        CurveInput in = random_smooth_curve(ctx, tag, rng);
        PipelineResult res = run_pipeline(in, prof, EngineMode::split);

        std::vector<long long> counts;
        for (int r = 1; r <= 3; ++r) counts.push_back(count_C(in, r));
        ipoly Phat = zeta_from_counts(counts, res.weil.q);
        CHECK(res.weil.P == Phat);
        for (int r = 1; r <= 3; ++r) CHECK(res.count(r) == counts[r - 1]);

        // criterion 10: P_E from the even block equals X^2 - a X + q with
        // a = q + 1 - #E(F_q)
        long aE = (long)(7 + 1 - count_E(in, 1));
        REQUIRE(res.weil.P_E.size() == 3);
        CHECK(res.weil.P_E[1] == mpz_class(-aE));
        CHECK(res.weil.P_E[0] == 7);

        // Case 1 block dimensions
        if (tag == CurveCase::case1) {
            CHECK(res.weil.charpoly_odd.size() == 5);   // 4x4 odd block
            CHECK(res.weil.charpoly_even.size() == 3);  // 2x2 even block
        }
    }
}

TEST_CASE("full mode agrees with split mode") {
    std::mt19937_64 rng(777);
    auto ctx = build_context(7, 1);
    auto prof = fast_profile(7, 1);
    CurveInput in = random_smooth_curve(ctx, CurveCase::case4, rng);
    // full mode internally cross-checks the 9x9 charpoly against the blocks
    PipelineResult full = run_pipeline(in, prof, EngineMode::full);
    PipelineResult split = run_pipeline(in, prof, EngineMode::split);
    CHECK(full.weil.P == split.weil.P);
}

TEST_CASE("end-to-end over F_49") {
    std::mt19937_64 rng(31337);
    auto ctx = build_context(7, 2, {1, 0, 1});
    auto prof = fast_profile(7, 2);
    CurveInput in = random_smooth_curve(ctx, CurveCase::case2, rng);
    PipelineResult res = run_pipeline(in, prof, EngineMode::split);
    std::vector<long long> counts;
    for (int r = 1; r <= 3; ++r) counts.push_back(count_C(in, r));
    CHECK(res.weil.P == zeta_from_counts(counts, res.weil.q));
}
