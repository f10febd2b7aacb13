#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "quartic_zeta/extension.hpp"
#include "quartic_zeta/fq_poly.hpp"
#include "quartic_zeta/precision.hpp"
#include "quartic_zeta/scaled.hpp"
#include "quartic_zeta/zq.hpp"

using namespace quartic_zeta;

namespace {

fq_elem rand_fq(const FieldContext& F, std::mt19937_64& rng) {
    fq_elem a(F.n);
    for (int i = 0; i < F.n; ++i) a[i] = (int64_t)(rng() % (uint64_t)F.p);
    return a;
}

}  // namespace

TEST_CASE("build_context basics") {
    auto F7 = build_context(7, 1);
    CHECK(F7->p == 7);
    CHECK(F7->modulus == std::vector<int64_t>{0, 1});  // m = t

    // t^2 + 1 is irreducible mod 7 iff -1 is a non-square mod 7; enumerate
    bool minus1_square = false;
    for (int64_t a = 0; a < 7; ++a)
        if (a * a % 7 == 6) minus1_square = true;
    REQUIRE_FALSE(minus1_square);
    auto F49 = build_context(7, 2, {1, 0, 1});
    CHECK(F49->q() == 49);

    CHECK_THROWS_AS(build_context(2, 1), parse_error);
    // t^2 - 1 = (t-1)(t+1) is reducible
    CHECK_THROWS_AS(build_context(7, 2, {6, 0, 1}), parse_error);
}

TEST_CASE("fq arithmetic laws") {
    auto F49 = build_context(7, 2, {1, 0, 1});  // t^2 = -1
    const auto& F = *F49;

    CHECK(fq_inv(F, fq_one(F)) == fq_one(F));

    // frobenius(t) = t^7 = -t when t^2 = -1
    fq_elem t{0, 1};
    CHECK(fq_frobenius(F, t) == fq_neg(F, t));

    // pow(a, q-1) = 1 for all a != 0
    for (uint64_t i = 1; i < 49; ++i) {
        fq_elem a = fq_from_index(F, i);
        CHECK(fq_pow(F, a, (uint64_t)48) == fq_one(F));
    }

    std::mt19937_64 rng(42);
    for (int it = 0; it < 200; ++it) {
        fq_elem a = rand_fq(F, rng), b = rand_fq(F, rng), c = rand_fq(F, rng);
        CHECK(fq_mul(F, a, fq_mul(F, b, c)) == fq_mul(F, fq_mul(F, a, b), c));
        CHECK(fq_mul(F, a, fq_add(F, b, c)) ==
              fq_add(F, fq_mul(F, a, b), fq_mul(F, a, c)));
        if (!fq_is_zero(a)) CHECK(fq_mul(F, a, fq_inv(F, a)) == fq_one(F));
    }
    CHECK_THROWS_AS(fq_inv(F, fq_zero(F)), precision_error);
}

TEST_CASE("extension fields and embeddings") {
    auto F7 = build_context(7, 1);

    auto E1 = extension_field(F7, 1);
    CHECK(E1.dst == F7);
    CHECK(E1.map(fq_from_int(*F7, 3)) == fq_from_int(*F7, 3));

    auto E2 = extension_field(F7, 2);
    CHECK(E2.dst->n == 2);
    CHECK(E2.map(fq_from_int(*F7, 3)) == fq_from_int(*E2.dst, 3));

    // embedding is a ring homomorphism, F_49 -> F_49^2
    auto F49 = build_context(7, 2, {1, 0, 1});
    auto E = extension_field(F49, 2);
    std::mt19937_64 rng(7);
    for (int it = 0; it < 100; ++it) {
        fq_elem a = rand_fq(*F49, rng), b = rand_fq(*F49, rng);
        CHECK(E.map(fq_mul(*F49, a, b)) == fq_mul(*E.dst, E.map(a), E.map(b)));
        CHECK(E.map(fq_add(*F49, a, b)) == fq_add(*E.dst, E.map(a), E.map(b)));
    }
    // the image of the source modulus root is a root
    FqField big{E.dst};
    poly<FqField> m(3);
    for (int i = 0; i < 3; ++i) m[i] = fq_from_int(*E.dst, F49->modulus[i]);
    CHECK(big.is_zero(poly_eval(big, m, E.gen_powers[1])));
}

TEST_CASE("polynomial toolkit over F_q") {
    auto F7 = build_context(7, 1);
    FqField K{F7};
    auto C = [&](int64_t c) { return fq_from_int(*F7, c); };

    // (x^2+1)(x+3) has roots {2, 5 (sqrt of -1 mod 7? 2^2=4, no...)}
    // x^2+1 mod 7: roots would need a^2 = -1 = 6; squares mod 7: 1,4,2 -> none
    poly<FqField> f{C(1), C(0), C(1)};
    poly<FqField> g{C(3), C(1)};
    auto fg = poly_mul(K, f, g);
    auto roots = poly_roots_in_field(K, fg);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0] == C(4));  // root of x+3

    auto orbit = poly_orbit_sizes(K, fg);
    CHECK(orbit == std::vector<int>{1, 2});

    // resultant of f and f' is nonzero iff squarefree
    CHECK_FALSE(K.is_zero(poly_resultant(K, fg, poly_derivative(K, fg))));
    auto sq = poly_mul(K, g, g);
    CHECK(K.is_zero(poly_resultant(K, sq, poly_derivative(K, sq))));
    CHECK(poly_squarefree_part(K, sq) == poly_make_monic(K, g));

    // tower: F_7[x]/(x^2+1) behaves as a field of order 49
    QuotientField<FqField> T{K, f};
    auto x = poly<FqField>{C(0), C(1)};
    auto xi = T.inv(x);
    CHECK(T.eq(T.mul(x, xi), T.one()));
    CHECK(T.order() == 49);
}

TEST_CASE("zq ring arithmetic and valuations") {
    auto F7 = build_context(7, 1);
    ZqRing R(F7, 3);  // Z_7 / 7^3

    // (val=-2, unit=3) * (val=2, unit=5) -> val=0, unit=15
    ScaledRing S(R);
    ZqScaled a = S.make(-2, R.from_int(3), 3);
    ZqScaled b = S.make(2, R.from_int(5), 3);
    ZqScaled ab = S.mul(a, b);
    CHECK(ab.val == 0);
    CHECK(ab.unit[0] == 15);

    // 1 + (p^N - 1) renormalizes with val >= 1
    ZqScaled one = S.from_int(1);
    ZqScaled m1 = S.from_zq_exact(R.from_mpz(R.pN() - 1));
    ZqScaled sum = S.add(one, m1);
    CHECK(sum.is_zeroish());
    CHECK(sum.val >= 1);

    // inv(p*u) has val = -1
    ZqScaled pu = S.make(1, R.from_int(3), 2);
    CHECK(S.inv(pu).val == -1);

    CHECK_THROWS_AS(S.inv(S.zeroish(2)), precision_error);

    // normalization invariant: unit part is a unit after ops
    std::mt19937_64 rng(1234);
    auto F49 = build_context(7, 2, {1, 0, 1});
    ZqRing R2(F49, 8);
    ScaledRing S2(R2);
    for (int it = 0; it < 100; ++it) {
        zq_elem x = R2.zero(), y = R2.zero();
        for (int i = 0; i < 2; ++i) {
            x[i] = (long)(rng() % 1000000);
            y[i] = (long)(rng() % 1000000);
        }
        R2.reduce(x);
        R2.reduce(y);
        ZqScaled sx = S2.from_zq_exact(x), sy = S2.from_zq_exact(y);
        for (const ZqScaled& v : {S2.add(sx, sy), S2.mul(sx, sy), S2.sub(sx, sy)}) {
            if (!v.is_zeroish()) CHECK(R2.valuation(v.unit) == 0);
        }
    }
}

TEST_CASE("teichmuller lift") {
    auto F7 = build_context(7, 1);

    for (int N : {2, 5, 10}) {
        ZqRing R(F7, N);
        CHECK(R.is_zero(R.teichmuller(fq_zero(*F7))));
        CHECK(R.teichmuller(fq_one(*F7)) == R.one());
        for (int64_t a = 1; a < 7; ++a) {
            zq_elem z = R.teichmuller(fq_elem{a});
            CHECK(R.to_fq(z) == fq_elem{a});
            CHECK(R.pow(z, mpz_class(7)) == z);  // z^q = z exactly mod p^N
        }
    }

    // p=7, n=1, N=2: teichmuller(2) = 30 mod 49 (z = 2 mod 7 with z^6 = 1 mod 49)
    ZqRing R2(F7, 2);
    CHECK(R2.teichmuller(fq_elem{2})[0] == 30);

    // teichmuller(a)^p = teichmuller(a^p) over F_49
    auto F49 = build_context(7, 2, {1, 0, 1});
    ZqRing R49(F49, 6);
    std::mt19937_64 rng(99);
    for (int it = 0; it < 30; ++it) {
        fq_elem a = rand_fq(*F49, rng);
        CHECK(R49.pow(R49.teichmuller(a), mpz_class(7)) ==
              R49.teichmuller(fq_frobenius(*F49, a)));
    }
}

TEST_CASE("sigma automorphism") {
    auto F7 = build_context(7, 1);
    ZqRing R1(F7, 5);
    zq_elem x = R1.from_int(1234);
    CHECK(R1.sigma(x) == x);  // n = 1: identity

    auto F49 = build_context(7, 2, {1, 0, 1});
    ZqRing R(F49, 8);

    // sigma(T) is a root of the modulus, congruent to T^p mod p
    const zq_elem& s = R.sigma_gen();
    zq_elem s2 = R.mul(s, s);
    zq_elem Msigma = R.add(s2, R.one());  // M = T^2 + 1
    CHECK(R.is_zero(Msigma));
    CHECK(R.to_fq(s) == fq_frobenius(*F49, fq_elem{0, 1}));

    // sigma^n = identity, ring homomorphism, reduces to x -> x^p
    std::mt19937_64 rng(5);
    for (int it = 0; it < 50; ++it) {
        fq_elem abar = rand_fq(*F49, rng), bbar = rand_fq(*F49, rng);
        zq_elem a = R.teichmuller(abar), b = R.from_fq(bbar);
        CHECK(R.sigma_iter(a, 2) == a);
        CHECK(R.sigma(R.mul(a, b)) == R.mul(R.sigma(a), R.sigma(b)));
        CHECK(R.sigma(R.add(a, b)) == R.add(R.sigma(a), R.sigma(b)));
        CHECK(R.to_fq(R.sigma(b)) == fq_frobenius(*F49, bbar));
        // sigma(teichmuller(a)) = teichmuller(a^p)
        CHECK(R.sigma(a) == R.teichmuller(fq_frobenius(*F49, abar)));
    }
    CHECK(R.sigma_iter(R.gen(), 2) == R.gen());
}

TEST_CASE("precision schedule") {
    auto P7 = precision_profile(7, 1);
    CHECK(P7.tau == 1);
    CHECK(P7.Delta == 33);  // 11 * (floor(log_7 63) + 1) = 11 * 3
    CHECK(P7.N1 == 4);      // floor(log_7 30 + 2) + 1

    CHECK(tau_of_p(17) == 0);
    CHECK(tau_of_p(3) == 5);
    CHECK(tau_of_p(5) == 3);
    CHECK(tau_of_p(11) == 1);
    CHECK(tau_of_p(13) == 1);

    for (long p : {3L, 5L, 7L, 11L, 13L, 17L}) {
        PrecisionProfile prev;
        for (int n = 1; n <= 4; ++n) {
            auto P = precision_profile(p, n);
            P.check();
            if (n > 1) {
                CHECK(P.N1 >= prev.N1);
                CHECK(P.N2 >= prev.N2);
                CHECK(P.N3 >= prev.N3);
                CHECK(P.N4 >= prev.N4);
                CHECK(P.N5 >= prev.N5);
            }
            prev = P;
        }
        auto Pf = fast_profile(p, 1);
        Pf.check();
    }
}

TEST_CASE("convergence schedule satisfies the solver conditions") {
    for (long p : {3L, 7L}) {
        auto S = convergence_schedule(p);
        long d = S.d;
        CHECK(d == 4 * p);
        auto dk = [&](long k) { return (k + 1) * d; };  // deg h_k <= (k+1)d
        // condition 2
        CHECK(S.delta(0) >= dk(0));
        for (long j = 1; j <= 24; ++j) CHECK(S.delta(j) - S.delta(j - 1) >= dk(1) - d);
        // condition 3: delta_j - delta_{j-1} >= d_1
        for (long j = 1; j <= 24; ++j) CHECK(S.delta(j) - S.delta(j - 1) >= dk(1));
        // condition 4: delta_{k-1+j} >= Delta_{k,j} + d_k
        for (long k = 2; k <= 12; ++k)
            for (long j = 0; j <= 12; ++j) CHECK(S.delta(k - 1 + j) >= S.Delta(k, j) + dk(k));
        // condition 1 with equality
        for (long nn = 1; nn <= 12; ++nn)
            for (long j = 0; j <= 12; ++j) {
                long best = 0;
                for (long l = 0; l <= j; ++l)
                    best = std::max(best, S.Delta(nn, j - l) + S.delta(l));
                CHECK(S.Delta(nn + 1, j) == best);
            }
    }
}
