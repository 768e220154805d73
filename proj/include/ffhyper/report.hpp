#pragma once

#include <string>

#include <json.hpp>

#include "ffhyper/identities.hpp"

namespace ffhyper {

/// JSON-lines report schema, version 1. Key order is fixed; timing is opt-in
/// so that seeded runs are byte-identical.
inline constexpr int kReportSchemaVersion = 1;

inline nlohmann::ordered_json report_to_json(const VerificationReport& r,
                                             bool include_timing = false) {
    nlohmann::ordered_json j;
    j["identity"] = to_string(r.identity);
    j["q"] = r.q;
    j["n"] = r.n;
    j["A"] = "chi" + std::to_string(r.A);
    nlohmann::ordered_json bs = nlohmann::ordered_json::array();
    for (std::uint32_t b : r.Bs) bs.push_back("chi" + std::to_string(b));
    j["B"] = bs;
    nlohmann::ordered_json cs = nlohmann::ordered_json::array();
    for (std::uint32_t c : r.Cs) cs.push_back("chi" + std::to_string(c));
    j["C"] = cs;
    j["x"] = r.xs;
    if (r.k) j["k"] = *r.k;
    if (r.l) j["l"] = *r.l;
    if (r.t) j["t"] = *r.t;
    j["equal"] = r.equal;
    j["lhs"] = r.lhs.to_strings();
    j["rhs"] = r.rhs.to_strings();
    j["lhs_embed"] = {r.lhs_mirror.real(), r.lhs_mirror.imag()};
    j["rhs_embed"] = {r.rhs_mirror.real(), r.rhs_mirror.imag()};
    j["mirror_gap"] = r.mirror_gap;
    j["exact_float_gap"] = r.exact_float_gap;
    if (include_timing) j["elapsed_us"] = r.elapsed_us;
    return j;
}

inline std::string report_line(const VerificationReport& r, bool include_timing = false) {
    return report_to_json(r, include_timing).dump();
}

} // namespace ffhyper
