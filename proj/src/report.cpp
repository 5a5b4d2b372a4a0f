#include "villab/report.hpp"

#include "villab/version.hpp"

#include <span>

namespace villab::report {

using namespace json_io;

RunConfig run_config_from_json(const json& j) {
    require_keys(j,
                 {"target_n", "stages", "policy", "overrides", "discs", "infinite",
                  "direct_cap"},
                 "run config");
    RunConfig config;
    config.target_n = j.at("target_n").get<std::int64_t>();
    config.stages = j.at("stages").get<std::int64_t>();
    if (j.contains("policy")) {
        const json& p = j.at("policy");
        require_keys(p, {"growth_multiplier", "fixed_m", "materialize_cap"},
                     "policy");
        if (p.contains("growth_multiplier"))
            config.policy.growth_multiplier = int_from_json(p.at("growth_multiplier"));
        if (p.contains("fixed_m") && !p.at("fixed_m").is_null())
            config.policy.fixed_m = p.at("fixed_m").get<std::int64_t>();
        if (p.contains("materialize_cap"))
            config.policy.materialize_cap = int_from_json(p.at("materialize_cap"));
    }
    if (j.contains("overrides")) {
        const json& o = j.at("overrides");
        require_keys(o, {"n1"}, "overrides");
        if (o.contains("n1") && !o.at("n1").is_null())
            config.override_n1 = o.at("n1").get<std::int64_t>();
    }
    if (j.contains("discs"))
        config.discs = j.at("discs").get<bool>();
    if (j.contains("infinite"))
        config.infinite = j.at("infinite").get<bool>();
    if (j.contains("direct_cap"))
        config.direct_cap = int_from_json(j.at("direct_cap"));
    return config;
}

namespace {

json policy_echo(const RunConfig& config) {
    json p;
    p["growth_multiplier"] = int_to_json(config.policy.growth_multiplier);
    p["fixed_m"] =
        config.policy.fixed_m ? json(*config.policy.fixed_m) : json(nullptr);
    p["materialize_cap"] = int_to_json(config.policy.materialize_cap);
    return p;
}

json versions() {
    json v;
    v["engine"] = version::kEngine;
    v["cohomology"] = version::kCohomology;
    v["bundles"] = version::kBundles;
    v["construction"] = version::kConstruction;
    v["rank_calculus"] = version::kRankCalculus;
    v["embeddings"] = version::kEmbeddings;
    return v;
}

}  // namespace

rank_calculus::GrowthProfile campaign_profile(const construction::Campaign& c) {
    rank_calculus::GrowthProfile p;
    for (const auto& s : c.stages) {
        const Int compact = s.N_i + (s.disc_dim ? *s.disc_dim : Int(0));
        p.entries.emplace_back(2 * compact, s.d_i);
    }
    return p;
}

std::string ratio_trace_csv(const construction::Campaign& c, std::int64_t k) {
    const auto trace = construction::ratio_trace(
        std::span<const construction::StageState>(c.stages), k);
    std::string out = "stage,k,real_dim_ratio,compact_ratio\n";
    for (const auto& entry : trace) {
        out += std::to_string(entry.stage) + "," + std::to_string(k) + "," +
               boost::multiprecision::numerator(entry.real_dim_ratio).str() + "/" +
               boost::multiprecision::denominator(entry.real_dim_ratio).str() + "," +
               boost::multiprecision::numerator(entry.compact_ratio).str() + "/" +
               boost::multiprecision::denominator(entry.compact_ratio).str() + "\n";
    }
    return out;
}

json run_campaign(const RunConfig& config) {
    construction::StageOptions opt;
    opt.target_n = config.target_n;
    opt.override_n1 = config.override_n1;
    opt.discs = config.discs;
    opt.infinite = config.infinite;
    opt.policy = config.policy;

    const construction::Campaign campaign =
        construction::run_stages(opt, config.stages);
    const std::int64_t ratio_k = config.ratio_k.value_or(config.target_n + 1);
    const auto trace = construction::ratio_trace(
        std::span<const construction::StageState>(campaign.stages), ratio_k);

    json config_echo;
    config_echo["target_n"] = config.target_n;
    config_echo["stages"] = config.stages;
    config_echo["policy"] = policy_echo(config);
    config_echo["override_n1"] =
        config.override_n1 ? json(*config.override_n1) : json(nullptr);
    config_echo["discs"] = config.discs;
    config_echo["infinite"] = config.infinite;
    config_echo["direct_cap"] = int_to_json(config.direct_cap);
    config_echo["ratio_k"] = ratio_k;

    json stage_reports = json::array();
    for (std::size_t i = 0; i < campaign.stages.size(); ++i) {
        const construction::StageState& s = campaign.stages[i];
        json entry = to_json(s);

        const std::span<const construction::StageState> chain(
            campaign.stages.data(), i + 1);
        json certificates;
        if (config.request_direct)
            certificates["direct"] = to_json(construction::certify_perforation(
                chain, construction::CertifyMethod::Direct, config.direct_cap));
        if (config.request_recursive)
            certificates["recursive"] = to_json(construction::certify_perforation(
                chain, construction::CertifyMethod::Recursive, config.direct_cap));
        entry["certificates"] = std::move(certificates);

        json ratios;
        ratios["k"] = ratio_k;
        ratios["real_dim"] = rational_to_json(trace[i].real_dim_ratio);
        ratios["compact"] = rational_to_json(trace[i].compact_ratio);
        entry["ratios"] = std::move(ratios);

        stage_reports.push_back(std::move(entry));
    }

    const auto profile = campaign_profile(campaign);
    json profile_json = json::array();
    for (std::size_t i = 0; i < profile.entries.size(); ++i) {
        json row;
        row["i"] = i + 1;
        row["dim"] = int_to_json(profile.entries[i].first);
        row["rank"] = int_to_json(profile.entries[i].second);
        profile_json.push_back(std::move(row));
    }

    json out;
    out["config"] = std::move(config_echo);
    out["versions"] = versions();
    out["stages"] = std::move(stage_reports);
    out["profile"] = std::move(profile_json);
    return out;
}

}  // namespace villab::report
