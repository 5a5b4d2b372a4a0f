#pragma once

#include "villab/construction.hpp"
#include "villab/json_io.hpp"
#include "villab/rank_calculus.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace villab::report {

using json = nlohmann::json;

// One construction campaign as driven from the CLI: stage parameters,
// certificates, ratio traces, growth profile.  Reports are byte-deterministic
// for fixed inputs: keys sort alphabetically and every collection is emitted
// in canonical order.
struct RunConfig {
    std::int64_t target_n = 1;
    std::int64_t stages = 1;
    construction::StagePolicy policy;
    std::optional<std::int64_t> override_n1;
    bool discs = false;
    bool infinite = false;
    Int direct_cap = 20000;
    bool request_direct = true;
    bool request_recursive = true;
    std::optional<std::int64_t> ratio_k;  // defaults to target_n + 1
};

// Parses the run-file schema
//   {"target_n": int, "stages": int, "policy": {...}, "overrides": {"n1": int},
//    "discs": bool, "infinite": bool, "direct_cap": int}
// rejecting unknown keys.
RunConfig run_config_from_json(const json& j);

json run_campaign(const RunConfig& config);

// Tabulated (real dimension, rank) profile of a campaign:
// dim_i = 2 N_i (+ 2 i d_i^2 with disc factors), rank_i = d_i.
rank_calculus::GrowthProfile campaign_profile(const construction::Campaign& c);

std::string ratio_trace_csv(const construction::Campaign& c, std::int64_t k);

}  // namespace villab::report
