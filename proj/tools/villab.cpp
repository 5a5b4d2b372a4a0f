// Batch front-end for the characteristic-class / growth-rank engine.  Every
// subcommand prints a JSON verdict (or CSV where asked) and exits 0 whenever a
// verdict was computed, including negative ones; nonzero exit means the input
// was malformed.

#include "villab/bundles.hpp"
#include "villab/construction.hpp"
#include "villab/embeddings.hpp"
#include "villab/json_io.hpp"
#include "villab/rank_calculus.hpp"
#include "villab/report.hpp"
#include "villab/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <span>
#include <sstream>

namespace {

using json = nlohmann::json;
using villab::IndexSet;
using villab::Int;
using villab::Rational;
namespace bundles = villab::bundles;
namespace construction = villab::construction;
namespace embeddings = villab::embeddings;
namespace json_io = villab::json_io;
namespace rank_calculus = villab::rank_calculus;
namespace report = villab::report;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;

void emit(const json& j, const std::string& out_path) {
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out)
            throw std::runtime_error("cannot open output file " + out_path);
        out << text;
    }
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open output file " + path);
    out << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open input file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Int default_expansion_cap() {
    if (const char* env = std::getenv("VILLADSEN_LAB_CAP"))
        return Int(env);
    return Int(20000);
}

std::vector<IndexSet> parse_sets(const std::string& text) {
    const json j = json::parse(text);
    if (!j.is_array())
        throw std::invalid_argument("--sets expects a JSON array of index arrays");
    std::vector<IndexSet> sets;
    for (const json& entry : j) {
        if (!entry.is_array())
            throw std::invalid_argument("--sets expects a JSON array of index arrays");
        IndexSet s;
        for (const json& idx : entry)
            s.insert(idx.get<std::int64_t>());
        sets.push_back(std::move(s));
    }
    return sets;
}

std::vector<bundles::LineBundle> parse_lines(const std::string& text,
                                             std::optional<std::int64_t> ambient) {
    const json j = json::parse(text);
    if (!j.is_array())
        throw std::invalid_argument("--lines expects a JSON array of line bundles");
    std::int64_t m = ambient.value_or(0);
    if (!ambient) {
        for (const json& line : j)
            for (const auto& [coord, mult] : line.at("indices").items()) {
                (void)mult;
                m = std::max(m, std::int64_t(std::stoll(coord)));
            }
    }
    std::vector<bundles::LineBundle> lines;
    for (const json& line : j)
        lines.push_back(json_io::line_from_json(line, m));
    return lines;
}

// ---------------------------------------------------------------------------

struct ConstructArgs {
    std::string run_file;
    std::int64_t target_n = 0;
    std::int64_t stages = 0;
    std::int64_t override_n1 = 0;
    bool discs = false;
    bool infinite = false;
    std::string direct_cap;
    std::string materialize_cap;
    std::int64_t fixed_m = 0;
    std::string growth_multiplier;
    bool no_direct = false;
    bool no_recursive = false;
    std::int64_t ratio_k = 0;
    std::string out_path;
    std::string csv_ratios;
    std::string csv_profile;
};

int cmd_construct(const ConstructArgs& args) {
    report::RunConfig config;
    if (!args.run_file.empty()) {
        config = report::run_config_from_json(json::parse(read_file(args.run_file)));
    } else {
        if (args.target_n < 1 || args.stages < 1)
            throw std::invalid_argument(
                "construct: need --run or both --n and --stages");
        config.target_n = args.target_n;
        config.stages = args.stages;
    }
    if (args.override_n1 > 0)
        config.override_n1 = args.override_n1;
    if (args.discs)
        config.discs = true;
    if (args.infinite)
        config.infinite = true;
    config.direct_cap =
        args.direct_cap.empty() ? default_expansion_cap() : Int(args.direct_cap);
    if (!args.materialize_cap.empty())
        config.policy.materialize_cap = Int(args.materialize_cap);
    if (args.fixed_m > 0)
        config.policy.fixed_m = args.fixed_m;
    if (!args.growth_multiplier.empty())
        config.policy.growth_multiplier = Int(args.growth_multiplier);
    config.request_direct = !args.no_direct;
    config.request_recursive = !args.no_recursive;
    if (args.ratio_k > 0)
        config.ratio_k = args.ratio_k;

    emit(report::run_campaign(config), args.out_path);

    if (!args.csv_ratios.empty() || !args.csv_profile.empty()) {
        construction::StageOptions opt;
        opt.target_n = config.target_n;
        opt.override_n1 = config.override_n1;
        opt.discs = config.discs;
        opt.infinite = config.infinite;
        opt.policy = config.policy;
        const auto campaign = construction::run_stages(opt, config.stages);
        if (!args.csv_ratios.empty())
            write_file(args.csv_ratios,
                       report::ratio_trace_csv(
                           campaign, config.ratio_k.value_or(config.target_n + 1)));
        if (!args.csv_profile.empty())
            write_file(args.csv_profile,
                       json_io::profile_to_csv(report::campaign_profile(campaign)));
    }
    return kExitOk;
}

int cmd_hall(const std::string& sets_text, const std::string& out_path) {
    const auto sets = parse_sets(sets_text);
    emit(json_io::to_json(bundles::hall_check(sets)), out_path);
    return kExitOk;
}

int cmd_euler(const std::string& bundle_text, const std::string& bundle_file,
              std::int64_t expand_cap, const std::string& out_path) {
    const std::string text =
        bundle_file.empty() ? bundle_text : read_file(bundle_file);
    if (text.empty())
        throw std::invalid_argument("euler: need --bundle or --bundle-file");
    const bundles::VectorBundle v = json_io::bundle_from_json(json::parse(text));

    json out;
    out["ambient"] = v.ambient();
    out["rank"] = json_io::int_to_json(v.rank());
    out["nonzero"] = bundles::euler_nonzero(v);
    if (v.line_count() <= expand_cap) {
        out["euler_class"] = json_io::to_json(bundles::euler_class(v));
        out["chern_class"] = json_io::to_json(bundles::chern_class(v));
    } else {
        out["euler_class"] = nullptr;
        out["note"] = "class expansion skipped: more than " +
                      std::to_string(expand_cap) + " line summands";
    }
    emit(out, out_path);
    return kExitOk;
}

int cmd_vil(const std::string& lines_text, std::int64_t l,
            std::optional<std::int64_t> ambient, const std::string& out_path) {
    const auto lines = parse_lines(lines_text, ambient);
    const auto cert = bundles::vil_obstruction(lines, l);
    json out;
    if (cert) {
        out["certificate"] = json_io::to_json(*cert);
    } else {
        out["certificate"] = nullptr;
        const std::int64_t k = static_cast<std::int64_t>(lines.size());
        out["reason"] = (l >= k) ? "no claim: l >= number of line summands"
                                 : "no claim: Euler class of the sum vanishes";
    }
    emit(out, out_path);
    return kExitOk;
}

int cmd_tdg(const std::string& profile_csv, const std::string& profile_json,
            const std::string& closed_c, std::int64_t closed_k, std::int64_t n_max,
            const std::string& tolerance, const std::string& out_path) {
    rank_calculus::GrowthProfile profile;
    if (!profile_csv.empty()) {
        profile = json_io::profile_from_csv(read_file(profile_csv));
    } else if (!profile_json.empty()) {
        profile = json_io::profile_from_json(json::parse(read_file(profile_json)));
    } else if (!closed_c.empty()) {
        rank_calculus::GrowthProfile::ClosedForm cf;
        cf.c = Int(closed_c);
        cf.k = closed_k;
        profile.closed_form = cf;
    } else {
        throw std::invalid_argument(
            "tdg: need --profile, --profile-json, or --closed-form-c/--closed-form-k");
    }
    const Rational tol =
        tolerance.empty() ? Rational(1, 1000) : json_io::parse_rational(tolerance);
    emit(json_io::to_json(rank_calculus::tdg_estimate(profile, n_max, tol)),
         out_path);
    return kExitOk;
}

int cmd_sr(const std::string& dim, const std::string& rank,
           const std::string& out_path) {
    const Int sr = rank_calculus::nistor_sr(Int(dim), Int(rank));
    json out;
    out["sr"] = json_io::int_to_json(sr);
    out["rr_upper"] = json_io::int_to_json(rank_calculus::rr_upper(sr));
    emit(out, out_path);
    return kExitOk;
}

int cmd_grcalc(const std::string& graph_file, const std::string& out_path) {
    const auto graph = json_io::graph_from_json(json::parse(read_file(graph_file)));
    emit(json_io::propagation_to_json(rank_calculus::propagate_gr(graph)), out_path);
    return kExitOk;
}

int cmd_prune(const std::string& system_file, const std::string& out_path) {
    const auto system =
        json_io::rank_one_system_from_json(json::parse(read_file(system_file)));
    emit(json_io::to_json(rank_calculus::prune_rank_one(system)), out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"villab: exact certificates for characteristic-class and "
                 "growth-rank combinatorics"};
    app.require_subcommand(1);
    app.set_version_flag("--version", villab::version::kEngine);

    std::string out_path;

    ConstructArgs cargs;
    auto* construct = app.add_subcommand(
        "construct", "run a stage campaign and emit its certificate report");
    construct->add_option("--run", cargs.run_file,
                          "run-file (JSON) with the campaign config");
    construct->add_option("--n", cargs.target_n, "perforation target n");
    construct->add_option("--stages", cargs.stages, "number of stages");
    construct->add_option("--override-n1", cargs.override_n1,
                          "toy n_1 override (marks the run non-canonical)");
    construct->add_flag("--discs", cargs.discs, "track polydisc factors");
    construct->add_flag("--infinite", cargs.infinite,
                        "infinite variant: exponent i*n at stage i");
    construct->add_option("--direct-cap", cargs.direct_cap,
                          "summand cap for direct certificates "
                          "(default: VILLADSEN_LAB_CAP or 20000)");
    construct->add_option("--materialize-cap", cargs.materialize_cap,
                          "largest N_i whose bundles are materialized");
    construct->add_option("--fixed-m", cargs.fixed_m, "policy override: constant m");
    construct->add_option("--growth-multiplier", cargs.growth_multiplier,
                          "policy constant in the m-rule");
    construct->add_flag("--no-direct", cargs.no_direct, "skip direct certificates");
    construct->add_flag("--no-recursive", cargs.no_recursive,
                        "skip recursive certificates");
    construct->add_option("--ratio-k", cargs.ratio_k,
                          "tensor exponent for the ratio trace (default n+1)");
    construct->add_option("--out", cargs.out_path, "write the JSON report here");
    construct->add_option("--csv-ratios", cargs.csv_ratios,
                          "also write the ratio trace as CSV");
    construct->add_option("--csv-profile", cargs.csv_profile,
                          "also write the growth profile as CSV");

    std::string sets_text;
    auto* hall = app.add_subcommand("hall", "Hall-condition check on index sets");
    hall->add_option("--sets", sets_text, "JSON array of index arrays")->required();
    hall->add_option("--out", out_path, "write the verdict here");

    std::string bundle_text, bundle_file;
    std::int64_t expand_cap = 20;
    auto* euler = app.add_subcommand("euler", "Euler/Chern classes of a bundle");
    euler->add_option("--bundle", bundle_text, "vector bundle (JSON)");
    euler->add_option("--bundle-file", bundle_file, "vector bundle (JSON file)");
    euler->add_option("--expand-cap", expand_cap,
                      "largest summand count whose classes are expanded");
    euler->add_option("--out", out_path, "write the verdict here");

    std::string lines_text;
    std::int64_t vil_l = 0;
    std::int64_t vil_ambient = 0;
    auto* vil = app.add_subcommand(
        "vil", "non-positivity certificate for [sum of lines] - [theta_l]");
    vil->add_option("--lines", lines_text, "JSON array of line bundles")->required();
    vil->add_option("--l", vil_l, "trivial rank l")->required();
    vil->add_option("--ambient", vil_ambient,
                    "ambient sphere count (default: max coordinate)");
    vil->add_option("--out", out_path, "write the verdict here");

    std::string profile_csv, profile_json_file, closed_c, tolerance;
    std::int64_t closed_k = 0, n_max = 8;
    auto* tdg = app.add_subcommand("tdg", "topological dimension growth estimate");
    tdg->add_option("--profile", profile_csv, "growth profile CSV (i,dim,rank)");
    tdg->add_option("--profile-json", profile_json_file, "growth profile JSON file");
    tdg->add_option("--closed-form-c", closed_c, "closed form dim = c * rank^k: c");
    tdg->add_option("--closed-form-k", closed_k, "closed form dim = c * rank^k: k");
    tdg->add_option("--n-max", n_max, "largest exponent to consider");
    tdg->add_option("--tolerance", tolerance, "tail tolerance (default 1/1000)");
    tdg->add_option("--out", out_path, "write the verdict here");

    auto* embed = app.add_subcommand("embed", "numerical-semigroup witnesses");
    embed->require_subcommand(1);
    std::string e_p, e_q, e_m, e_rank, e_dim, e_n, e_maxdim, e_minrank, e_eps;
    std::vector<std::string> e_sizes;

    auto* frob =
        embed->add_subcommand("frobenius", "largest non-representable integer");
    frob->add_option("p", e_p)->required();
    frob->add_option("q", e_q)->required();
    frob->add_option("--out", out_path);

    auto* repr = embed->add_subcommand("represent", "least (a, b) with ap + bq = M");
    repr->add_option("M", e_m)->required();
    repr->add_option("p", e_p)->required();
    repr->add_option("q", e_q)->required();
    repr->add_option("--out", out_path);

    auto* homembed = embed->add_subcommand(
        "homembed", "witness rank = aN + b(N+1) with a, b >= ceil(dim/2)");
    homembed->add_option("rank", e_rank)->required();
    homembed->add_option("dim", e_dim)->required();
    homembed->add_option("N", e_n)->required();
    homembed->add_option("--out", out_path);

    auto* dimdrop = embed->add_subcommand(
        "dimdrop", "coefficient schedule a_k p + b_k q = k per summand");
    dimdrop->add_option("p", e_p)->required();
    dimdrop->add_option("q", e_q)->required();
    dimdrop->add_option("sizes", e_sizes, "summand matrix sizes")->required();
    dimdrop->add_option("--out", out_path);

    auto* lochom = embed->add_subcommand(
        "lochom", "least k with k*max_dim/min_rank^k < eps");
    lochom->add_option("max_dim", e_maxdim)->required();
    lochom->add_option("min_rank", e_minrank)->required();
    lochom->add_option("eps", e_eps)->required();
    lochom->add_option("--out", out_path);

    std::string sr_dim, sr_rank;
    auto* sr =
        app.add_subcommand("sr", "stable rank of a cut-down homogeneous algebra");
    sr->add_option("--dim", sr_dim, "spectrum dimension")->required();
    sr->add_option("--rank", sr_rank, "unit rank")->required();
    sr->add_option("--out", out_path);

    std::string graph_file;
    auto* grcalc = app.add_subcommand("grcalc", "growth-rank bound propagation");
    grcalc->add_option("--graph", graph_file, "descriptor graph JSON file")
        ->required();
    grcalc->add_option("--out", out_path);

    std::string system_file;
    auto* prune = app.add_subcommand("prune", "rank-one summand pruning");
    prune->add_option("--system", system_file, "staged summand system JSON file")
        ->required();
    prune->add_option("--out", out_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (construct->parsed())
            return cmd_construct(cargs);
        if (hall->parsed())
            return cmd_hall(sets_text, out_path);
        if (euler->parsed())
            return cmd_euler(bundle_text, bundle_file, expand_cap, out_path);
        if (vil->parsed())
            return cmd_vil(lines_text, vil_l,
                           vil_ambient > 0 ? std::optional<std::int64_t>(vil_ambient)
                                           : std::nullopt,
                           out_path);
        if (tdg->parsed())
            return cmd_tdg(profile_csv, profile_json_file, closed_c, closed_k, n_max,
                           tolerance, out_path);
        if (embed->parsed()) {
            json out;
            if (frob->parsed()) {
                out["frobenius"] =
                    json_io::int_to_json(embeddings::frobenius(Int(e_p), Int(e_q)));
            } else if (repr->parsed()) {
                const auto w = embeddings::represent(Int(e_m), Int(e_p), Int(e_q));
                if (w) {
                    json witness;
                    witness["a"] = json_io::int_to_json(w->a);
                    witness["b"] = json_io::int_to_json(w->b);
                    out["witness"] = std::move(witness);
                } else {
                    out["witness"] = nullptr;
                }
            } else if (homembed->parsed()) {
                const auto w =
                    embeddings::homembed_witness(Int(e_rank), Int(e_dim), Int(e_n));
                if (w) {
                    json witness;
                    witness["a"] = json_io::int_to_json(w->a);
                    witness["b"] = json_io::int_to_json(w->b);
                    out["witness"] = std::move(witness);
                } else {
                    out["witness"] = nullptr;
                }
                out["min_rank"] = json_io::int_to_json(
                    embeddings::homembed_min_rank(Int(e_n), Int(e_dim)));
            } else if (dimdrop->parsed()) {
                std::vector<Int> sizes;
                for (const auto& s : e_sizes)
                    sizes.emplace_back(s);
                const auto schedule =
                    embeddings::dimdrop_schedule(Int(e_p), Int(e_q), sizes);
                json entries = json::array();
                for (const auto& entry : schedule) {
                    json row;
                    row["size"] = json_io::int_to_json(entry.size);
                    row["a"] = json_io::int_to_json(entry.a);
                    row["b"] = json_io::int_to_json(entry.b);
                    entries.push_back(std::move(row));
                }
                out["schedule"] = std::move(entries);
            } else if (lochom->parsed()) {
                out["k"] = embeddings::lochom_exponent(
                    Int(e_maxdim), Int(e_minrank), json_io::parse_rational(e_eps));
            }
            emit(out, out_path);
            return kExitOk;
        }
        if (sr->parsed())
            return cmd_sr(sr_dim, sr_rank, out_path);
        if (grcalc->parsed())
            return cmd_grcalc(graph_file, out_path);
        if (prune->parsed())
            return cmd_prune(system_file, out_path);
    } catch (const std::exception& ex) {
        json err;
        err["error"] = ex.what();
        std::cerr << err.dump(2) << "\n";
        return kExitBadInput;
    }
    return kExitBadInput;
}
