#include "villab/json_io.hpp"

#include <algorithm>
#include <sstream>

namespace villab::json_io {

json int_to_json(const Int& x) {
    if (fits_int64(x))
        return to_int64(x);
    return x.str();
}

Int int_from_json(const json& j) {
    if (j.is_number_integer())
        return Int(j.get<std::int64_t>());
    if (j.is_string())
        return Int(j.get<std::string>());
    throw std::invalid_argument("expected an integer (number or decimal string)");
}

json rational_to_json(const Rational& r) {
    json out;
    out["exact"] = boost::multiprecision::numerator(r).str() + "/" +
                   boost::multiprecision::denominator(r).str();
    out["approx"] = r.convert_to<double>();
    return out;
}

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const Int num(text.substr(0, slash));
        const Int den(text.substr(slash + 1));
        if (den == 0)
            throw std::invalid_argument("parse_rational: zero denominator");
        return Rational(num, den);
    }
    // Decimal / scientific form: sign, digits, optional fraction, optional exponent.
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        negative = text[pos] == '-';
        ++pos;
    }
    std::string digits;
    std::int64_t frac_digits = 0;
    bool seen_digit = false;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        digits += text[pos++];
        seen_digit = true;
    }
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        while (pos < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[pos]))) {
            digits += text[pos++];
            ++frac_digits;
            seen_digit = true;
        }
    }
    std::int64_t exponent = 0;
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
        ++pos;
        bool exp_neg = false;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            exp_neg = text[pos] == '-';
            ++pos;
        }
        std::string exp_digits;
        while (pos < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[pos])))
            exp_digits += text[pos++];
        if (exp_digits.empty())
            throw std::invalid_argument("parse_rational: malformed exponent");
        exponent = std::stoll(exp_digits);
        if (exp_neg)
            exponent = -exponent;
    }
    if (!seen_digit || pos != text.size())
        throw std::invalid_argument("parse_rational: malformed number '" + text + "'");

    Int num(digits.empty() ? "0" : digits);
    if (negative)
        num = -num;
    const std::int64_t net = exponent - frac_digits;
    if (net >= 0)
        return Rational(num * ipow(10, net), 1);
    return Rational(num, ipow(10, -net));
}

// ---------------------------------------------------------------------------
// Cohomology

json to_json(const cohomology::CohomologyClass& c) {
    json terms = json::array();
    for (const auto& [subset, coeff] : c.terms()) {
        json term;
        json idx = json::array();
        subset.for_each([&idx](std::int64_t s) { idx.push_back(s); });
        term["subset"] = std::move(idx);
        term["coeff"] = int_to_json(coeff);
        terms.push_back(std::move(term));
    }
    json out;
    out["ambient"] = c.ambient();
    out["terms"] = std::move(terms);
    return out;
}

cohomology::CohomologyClass cohomology_from_json(const json& j) {
    require_keys(j, {"ambient", "terms"}, "cohomology class");
    cohomology::CohomologyClass c(j.at("ambient").get<std::int64_t>());
    for (const json& term : j.at("terms")) {
        require_keys(term, {"subset", "coeff"}, "cohomology term");
        IndexSet subset;
        for (const json& s : term.at("subset"))
            subset.insert(s.get<std::int64_t>());
        c.add_term(subset, int_from_json(term.at("coeff")));
    }
    return c;
}

// ---------------------------------------------------------------------------
// Bundles

json to_json(const bundles::LineBundle& line) {
    json idx = json::object();
    for (const auto& [coord, mult] : line.indices())
        idx[std::to_string(coord)] = mult;
    json out;
    out["indices"] = std::move(idx);
    return out;
}

bundles::LineBundle line_from_json(const json& j, std::int64_t ambient) {
    require_keys(j, {"indices"}, "line bundle");
    std::map<std::int64_t, std::int64_t> idx;
    for (const auto& [key, value] : j.at("indices").items())
        idx[std::stoll(key)] = value.get<std::int64_t>();
    return bundles::LineBundle(ambient, std::move(idx));
}

json to_json(const bundles::VectorBundle& v) {
    json lines = json::array();
    for (const auto& [line, count] : v.lines()) {
        const std::int64_t c = to_int64(count);
        for (std::int64_t i = 0; i < c; ++i)
            lines.push_back(to_json(line));
    }
    json out;
    out["ambient"] = v.ambient();
    out["trivial"] = int_to_json(v.trivial_rank());
    out["lines"] = std::move(lines);
    return out;
}

bundles::VectorBundle bundle_from_json(const json& j) {
    require_keys(j, {"ambient", "trivial", "lines"}, "vector bundle");
    const std::int64_t ambient = j.at("ambient").get<std::int64_t>();
    bundles::VectorBundle v(ambient);
    v.add_trivial(int_from_json(j.at("trivial")));
    for (const json& line : j.at("lines"))
        v.add_line(line_from_json(line, ambient), 1);
    return v;
}

json to_json(const bundles::KClass& x) {
    json lines = json::array();
    for (const auto& [line, mult] : x.lines()) {
        json entry = to_json(line);
        entry["mult"] = int_to_json(mult);
        lines.push_back(std::move(entry));
    }
    json out;
    out["ambient"] = x.ambient();
    out["trivial_part"] = int_to_json(x.trivial_part());
    out["lines"] = std::move(lines);
    return out;
}

bundles::KClass kclass_from_json(const json& j) {
    require_keys(j, {"ambient", "trivial_part", "lines"}, "K-class");
    const std::int64_t ambient = j.at("ambient").get<std::int64_t>();
    bundles::KClass x(ambient);
    x.add_trivial(int_from_json(j.at("trivial_part")));
    for (const json& entry : j.at("lines")) {
        require_keys(entry, {"indices", "mult"}, "K-class line");
        json line;
        line["indices"] = entry.at("indices");
        x.add_line(line_from_json(line, ambient), int_from_json(entry.at("mult")));
    }
    return x;
}

json to_json(const bundles::HallResult& h) {
    json out;
    out["hall"] = h.ok;
    if (h.ok) {
        json matching = json::object();
        for (std::size_t j = 0; j < h.matching.size(); ++j)
            matching[std::to_string(j + 1)] = h.matching[j];
        out["matching"] = std::move(matching);
    } else {
        json family = json::array();
        for (std::size_t idx : h.violating_family)
            family.push_back(idx + 1);
        out["violating_family"] = std::move(family);
        json union_set = json::array();
        h.violating_union.for_each(
            [&union_set](std::int64_t s) { union_set.push_back(s); });
        out["violating_union"] = std::move(union_set);
    }
    return out;
}

json to_json(const bundles::VilCertificate& cert) {
    json out;
    out["claim"] = to_json(cert.claim);
    out["summands"] = int_to_json(cert.summand_count);
    out["trivial_rank"] = int_to_json(cert.trivial_rank);
    out["witness"] = to_json(cert.witness);
    out["verdict"] = "not positive";
    return out;
}

// ---------------------------------------------------------------------------
// Construction

json to_json(const construction::PerforationCertificate& cert) {
    json out;
    out["stage"] = cert.stage;
    out["method"] = cert.method;
    out["exponent"] = cert.exponent;
    out["expansion_rank"] = int_to_json(cert.expansion_rank);
    out["claim_summary"] = cert.claim_summary;
    if (cert.claim)
        out["claim"] = to_json(*cert.claim);
    if (cert.base_witness)
        out["base_witness"] = to_json(*cert.base_witness);
    if (!cert.steps.empty()) {
        json steps = json::array();
        for (const auto& step : cert.steps) {
            json s;
            s["stage"] = step.stage;
            s["block_size"] = int_to_json(step.block_size);
            s["required"] = int_to_json(step.required);
            s["ok"] = step.ok;
            steps.push_back(std::move(s));
        }
        out["steps"] = std::move(steps);
    }
    out["theta_summand_checked"] = cert.theta_summand_checked;
    return out;
}

json to_json(const construction::CertifyOutcome& outcome) {
    json out;
    out["ok"] = outcome.ok();
    if (outcome.ok()) {
        out["certificate"] = to_json(*outcome.certificate);
    } else {
        out["reason"] = outcome.failure_reason;
        if (outcome.failure_witness)
            out["witness"] = to_json(*outcome.failure_witness);
    }
    return out;
}

json to_json(const construction::StageState& s) {
    json out;
    out["i"] = s.index;
    out["exponent"] = s.exponent;
    out["n_i"] = int_to_json(s.n_i);
    out["N_i"] = int_to_json(s.N_i);
    out["N_prev"] = int_to_json(s.N_prev);
    out["m_i"] = s.index == 1 ? json(nullptr) : int_to_json(s.m_i);
    out["d_i"] = int_to_json(s.d_i);
    json blocks = json::array();
    for (std::size_t l = 0; l < s.blocks.size(); ++l) {
        json b;
        b["l"] = l + 1;
        b["lo"] = int_to_json(s.blocks[l].lo);
        b["hi"] = int_to_json(s.blocks[l].hi);
        blocks.push_back(std::move(b));
    }
    out["blocks"] = std::move(blocks);
    out["materialized"] = s.materialized();
    out["canonical"] = s.canonical;
    if (s.disc_dim) {
        out["disc_dim"] = int_to_json(*s.disc_dim);
        out["disc_real_dim"] = int_to_json(2 * *s.disc_dim);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rank calculus

json to_json(const rank_calculus::GrValue& v) {
    if (v.infinite)
        return "inf";
    return v.v;
}

rank_calculus::GrValue gr_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf")
            return rank_calculus::GrValue::inf();
        throw std::invalid_argument("gr bound: expected integer or \"inf\"");
    }
    return rank_calculus::GrValue::fin(j.get<std::int64_t>());
}

namespace {

const char* edge_kind_name(rank_calculus::EdgeKind kind) {
    using rank_calculus::EdgeKind;
    switch (kind) {
    case EdgeKind::Hereditary: return "hereditary";
    case EdgeKind::Quotient: return "quotient";
    case EdgeKind::MatrixStable: return "matrix_stable";
    case EdgeKind::Tensor: return "tensor";
    case EdgeKind::DirectSum: return "direct_sum";
    case EdgeKind::HereditarySum: return "hereditary_sum";
    case EdgeKind::Limit: return "limit";
    case EdgeKind::Extension: return "extension";
    }
    return "?";
}

rank_calculus::EdgeKind edge_kind_from_name(const std::string& name) {
    using rank_calculus::EdgeKind;
    if (name == "hereditary") return EdgeKind::Hereditary;
    if (name == "quotient") return EdgeKind::Quotient;
    if (name == "matrix_stable") return EdgeKind::MatrixStable;
    if (name == "tensor") return EdgeKind::Tensor;
    if (name == "direct_sum") return EdgeKind::DirectSum;
    if (name == "hereditary_sum") return EdgeKind::HereditarySum;
    if (name == "limit") return EdgeKind::Limit;
    if (name == "extension") return EdgeKind::Extension;
    throw std::invalid_argument("unknown edge type '" + name + "'");
}

}  // namespace

json to_json(const rank_calculus::DescriptorGraph& g) {
    json nodes = json::array();
    for (const auto& n : g.nodes) {
        json node;
        node["name"] = n.name;
        node["lower"] = to_json(n.lower);
        node["upper"] = to_json(n.upper);
        nodes.push_back(std::move(node));
    }
    json edges = json::array();
    for (const auto& e : g.edges) {
        json edge;
        edge["type"] = edge_kind_name(e.kind);
        edge["node"] = g.nodes[static_cast<std::size_t>(e.node)].name;
        json others = json::array();
        for (int o : e.others)
            others.push_back(g.nodes[static_cast<std::size_t>(o)].name);
        edge["others"] = std::move(others);
        edges.push_back(std::move(edge));
    }
    json out;
    out["nodes"] = std::move(nodes);
    out["edges"] = std::move(edges);
    return out;
}

rank_calculus::DescriptorGraph graph_from_json(const json& j) {
    require_keys(j, {"nodes", "edges"}, "descriptor graph");
    rank_calculus::DescriptorGraph g;
    for (const json& node : j.at("nodes")) {
        require_keys(node, {"name", "lower", "upper"}, "descriptor node");
        rank_calculus::DescriptorNode n;
        n.name = node.at("name").get<std::string>();
        if (node.contains("lower"))
            n.lower = gr_from_json(node.at("lower"));
        if (node.contains("upper"))
            n.upper = gr_from_json(node.at("upper"));
        if (g.find_node(n.name) != -1)
            throw std::invalid_argument("duplicate node '" + n.name + "'");
        g.nodes.push_back(std::move(n));
    }
    auto resolve = [&g](const json& name) {
        const int idx = g.find_node(name.get<std::string>());
        if (idx == -1)
            throw std::invalid_argument("unknown node '" +
                                        name.get<std::string>() + "'");
        return idx;
    };
    for (const json& edge : j.at("edges")) {
        require_keys(edge, {"type", "node", "others"}, "descriptor edge");
        rank_calculus::DescriptorEdge e;
        e.kind = edge_kind_from_name(edge.at("type").get<std::string>());
        e.node = resolve(edge.at("node"));
        for (const json& o : edge.at("others"))
            e.others.push_back(resolve(o));
        g.edges.push_back(std::move(e));
    }
    return g;
}

json propagation_to_json(const rank_calculus::PropagationResult& r) {
    json out;
    json bounds = json::object();
    for (const auto& n : r.graph.nodes) {
        json b;
        b["lower"] = to_json(n.lower);
        b["upper"] = to_json(n.upper);
        bounds[n.name] = std::move(b);
    }
    out["bounds"] = std::move(bounds);
    out["passes"] = r.passes;
    if (r.contradiction) {
        json c;
        c["node"] =
            r.graph.nodes[static_cast<std::size_t>(r.contradiction->node)].name;
        json chain = json::array();
        for (const auto& step : r.contradiction->chain) {
            json s;
            s["node"] = r.graph.nodes[static_cast<std::size_t>(step.node)].name;
            s["bound"] = step.is_upper ? "upper" : "lower";
            s["from"] = to_json(step.from);
            s["to"] = to_json(step.to);
            s["rule"] = step.rule;
            chain.push_back(std::move(s));
        }
        c["chain"] = std::move(chain);
        out["contradiction"] = std::move(c);
    }
    return out;
}

rank_calculus::RankOneSystem rank_one_system_from_json(const json& j) {
    require_keys(j, {"stages", "maps"}, "rank-one system");
    rank_calculus::RankOneSystem sys;
    for (const json& stage : j.at("stages")) {
        std::vector<Int> ranks;
        for (const json& r : stage)
            ranks.push_back(int_from_json(r));
        sys.stage_ranks.push_back(std::move(ranks));
    }
    for (const json& matrix : j.at("maps")) {
        std::vector<std::vector<bool>> m;
        for (const json& row : matrix) {
            std::vector<bool> r;
            for (const json& cell : row)
                r.push_back(cell.get<bool>());
            m.push_back(std::move(r));
        }
        sys.maps.push_back(std::move(m));
    }
    return sys;
}

json to_json(const rank_calculus::PruneVerdict& v) {
    json out;
    if (v.clean) {
        out["verdict"] = "clean";
        out["stage"] = v.clean_stage;
    } else {
        out["verdict"] = "surviving_chain";
        json chain = json::array();
        for (const auto& [stage, summand] : v.chain) {
            json link;
            link["stage"] = stage;
            link["summand"] = summand;
            chain.push_back(std::move(link));
        }
        out["chain"] = std::move(chain);
        out["length"] = v.chain.size();
    }
    return out;
}

json to_json(const rank_calculus::TdgResult& r) {
    json out;
    switch (r.kind) {
    case rank_calculus::TdgResult::Kind::Value:
        out["tdg"] = r.value;
        break;
    case rank_calculus::TdgResult::Kind::AboveMax:
        out["tdg"] = "above_max";
        out["detail"] = r.detail;
        break;
    case rank_calculus::TdgResult::Kind::Inconclusive:
        out["tdg"] = "inconclusive";
        out["detail"] = r.detail;
        break;
    }
    return out;
}

rank_calculus::GrowthProfile profile_from_json(const json& j) {
    rank_calculus::GrowthProfile p;
    if (j.contains("c") || j.contains("k")) {
        require_keys(j, {"c", "k"}, "closed-form profile");
        rank_calculus::GrowthProfile::ClosedForm cf;
        cf.c = int_from_json(j.at("c"));
        cf.k = j.at("k").get<std::int64_t>();
        p.closed_form = cf;
        return p;
    }
    require_keys(j, {"entries"}, "tabulated profile");
    for (const json& entry : j.at("entries")) {
        require_keys(entry, {"dim", "rank"}, "profile entry");
        p.entries.emplace_back(int_from_json(entry.at("dim")),
                               int_from_json(entry.at("rank")));
    }
    return p;
}

rank_calculus::GrowthProfile profile_from_csv(const std::string& text) {
    rank_calculus::GrowthProfile p;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream row(line);
        std::string i_str, dim_str, rank_str;
        if (!std::getline(row, i_str, ',') || !std::getline(row, dim_str, ',') ||
            !std::getline(row, rank_str, ','))
            throw std::invalid_argument("profile CSV: expected 'i,dim,rank' rows");
        if (first && i_str == "i") {
            first = false;
            continue;  // header
        }
        first = false;
        p.entries.emplace_back(Int(dim_str), Int(rank_str));
    }
    return p;
}

std::string profile_to_csv(const rank_calculus::GrowthProfile& p) {
    std::string out = "i,dim,rank\n";
    for (std::size_t i = 0; i < p.entries.size(); ++i)
        out += std::to_string(i + 1) + "," + p.entries[i].first.str() + "," +
               p.entries[i].second.str() + "\n";
    return out;
}

void require_keys(const json& j, const std::vector<std::string>& allowed,
                  const std::string& where) {
    if (!j.is_object())
        throw std::invalid_argument(where + ": expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw std::invalid_argument(where + ": unknown key '" + key + "'");
    }
}

}  // namespace villab::json_io
