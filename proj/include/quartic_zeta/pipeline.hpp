#pragma once

#include <chrono>

#include "quartic_zeta/oracle.hpp"
#include "quartic_zeta/zeta.hpp"

namespace quartic_zeta {

struct StepTimings {
    double step1_ms = 0;  // lift + Bezout cofactors
    double step2_ms = 0;  // Frobenius lift and pullback forms
    double step3_ms = 0;  // cohomology reductions -> M_p
    double step4_ms = 0;  // sigma-twisted norm -> M_q
    double step5_ms = 0;  // characteristic polynomials and reconstruction
};

struct PipelineResult {
    CurveCase tag = CurveCase::case1;
    InfinityData inf;
    PrecisionProfile profile;
    EngineMode mode = EngineMode::split;
    WeilData weil;
    StepTimings timings;

    long long count(int r) const { return weil_count(weil.P, weil.q, r); }
};

inline PipelineResult run_pipeline(const CurveInput& in, const PrecisionProfile& prof,
                                   EngineMode mode) {
    using clock = std::chrono::steady_clock;
    auto ms = [](clock::time_point a, clock::time_point b) {
        return std::chrono::duration<double, std::milli>(b - a).count();
    };
    PipelineResult out;
    out.profile = prof;
    out.mode = mode;

    auto t0 = clock::now();
    LiftedCurve curve = lift_curve(in, prof);
    out.tag = curve.tag;
    out.inf = curve.inf;
    BezoutPair bez = solve_bezout(in);
    ScaledRing S(ZqRing(in.ctx, prof.N5));
    ReductionEngine E(curve, S, prof.N5 - prof.N4);
    auto t1 = clock::now();
    out.timings.step1_ms = ms(t0, t1);

    FrobeniusData D = build_frobenius(curve, bez, prof);
    std::vector<ScaledForm> forms = pullback_forms(E, D);
    auto t2 = clock::now();
    out.timings.step2_ms = ms(t1, t2);

    FrobeniusMatrix Mp = assemble_Mp(E, forms);
    auto t3 = clock::now();
    out.timings.step3_ms = ms(t2, t3);

    FrobeniusMatrix Mq = twisted_norm(S, Mp, in.ctx->n);
    auto t4 = clock::now();
    out.timings.step4_ms = ms(t3, t4);

    out.weil = reconstruct(curve, Mq, prof, S, mode);
    auto t5 = clock::now();
    out.timings.step5_ms = ms(t4, t5);
    return out;
}

}  // namespace quartic_zeta
