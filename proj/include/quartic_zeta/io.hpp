#pragma once

#include <string>

#include <json.hpp>

#include "quartic_zeta/pipeline.hpp"

namespace quartic_zeta {

using ordered_json = nlohmann::ordered_json;

// Input schema: {p, n, modulus?: [c0..cn], g: [a0,a1,a2], h: [b0..b4]} with
// each coefficient an integer (n = 1) or a length-n integer vector.
inline CurveInput parse_curve(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("input is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw parse_error("input must be a JSON object");
    for (const char* key : {"p", "n", "g", "h"})
        if (!j.contains(key)) throw parse_error(std::string("missing field \"") + key + "\"");

    long p = 0;
    int n = 0;
    try {
        p = j.at("p").get<long>();
        n = j.at("n").get<int>();
    } catch (const nlohmann::json::exception&) {
        throw parse_error("fields \"p\" and \"n\" must be integers");
    }
    std::vector<int64_t> modulus;
    if (j.contains("modulus")) {
        if (!j["modulus"].is_array() || (int)j["modulus"].size() != n + 1)
            throw parse_error("\"modulus\" must be an integer array of length n+1");
        for (auto& c : j["modulus"]) modulus.push_back(c.get<int64_t>());
    }
    FieldContextPtr ctx = build_context(p, n, modulus);

    auto coeff = [&](const nlohmann::json& c, const char* where) {
        fq_elem a(n, 0);
        if (c.is_number_integer()) {
            a[0] = mod_p(c.get<int64_t>(), p);
        } else if (c.is_array()) {
            if ((int)c.size() != n)
                throw parse_error(std::string("coefficient vector in \"") + where +
                                  "\" must have length n");
            for (int i = 0; i < n; ++i) a[i] = mod_p(c[i].get<int64_t>(), p);
        } else {
            throw parse_error(std::string("coefficients in \"") + where +
                              "\" must be integers or integer vectors");
        }
        return a;
    };

    CurveInput in;
    in.ctx = ctx;
    if (!j["g"].is_array() || j["g"].size() != 3)
        throw parse_error("\"g\" must be an array of 3 coefficients [a0,a1,a2]");
    if (!j["h"].is_array() || j["h"].size() != 5)
        throw parse_error("\"h\" must be an array of 5 coefficients [b0..b4]");
    for (int i = 0; i < 3; ++i) in.gbar[i] = coeff(j["g"][i], "g");
    for (int i = 0; i < 5; ++i) in.hbar[i] = coeff(j["h"][i], "h");
    return in;
}

struct CountReport {
    int r = 0;
    long long engine = 0;
    bool has_oracle = false;
    long long oracle = 0;
    bool match = false;
};

inline ordered_json descending(const ipoly& P) {
    ordered_json arr = ordered_json::array();
    for (size_t i = P.size(); i-- > 0;) arr.push_back(P[i].get_str());
    return arr;
}

inline ordered_json result_to_json(const PipelineResult& res,
                                   const std::vector<CountReport>& counts,
                                   bool with_timings = true) {
    ordered_json j;
    j["case"] = (int)res.tag;
    j["delta_C"] = res.inf.delta_C;
    j["delta_E"] = res.inf.delta_E;
    j["orbits"] = ordered_json::object();
    j["orbits"]["C"] = res.inf.orbits_C;
    j["orbits"]["E"] = res.inf.orbits_E;
    j["precisions"] = {{"N1", res.profile.N1},
                       {"N2", res.profile.N2},
                       {"N3", res.profile.N3},
                       {"N4", res.profile.N4},
                       {"N5", res.profile.N5}};
    j["mode"] = res.mode == EngineMode::split ? "split" : "full";
    j["P_E"] = descending(res.weil.P_E);
    j["P_2"] = descending(res.weil.P_2);
    j["P_V"] = descending(res.weil.P_V);
    j["P"] = descending(res.weil.P);
    ordered_json cj = ordered_json::array();
    for (const auto& c : counts) {
        ordered_json one;
        one["r"] = c.r;
        one["engine"] = c.engine;
        if (c.has_oracle) {
            one["oracle"] = c.oracle;
            one["match"] = c.match;
        }
        cj.push_back(one);
    }
    j["counts"] = cj;
    if (with_timings)
        j["timings_ms"] = {{"step1", res.timings.step1_ms},
                           {"step2", res.timings.step2_ms},
                           {"step3", res.timings.step3_ms},
                           {"step4", res.timings.step4_ms},
                           {"step5", res.timings.step5_ms}};
    return j;
}

}  // namespace quartic_zeta
