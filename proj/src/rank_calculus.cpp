#include "villab/rank_calculus.hpp"

#include <algorithm>
#include <stdexcept>

namespace villab::rank_calculus {

// ---------------------------------------------------------------------------
// GrValue

GrValue GrValue::fin(std::int64_t x) {
    if (x < 1)
        throw std::invalid_argument("GrValue: finite values start at 1");
    return GrValue{false, x};
}

bool gr_less(const GrValue& a, const GrValue& b) {
    if (a.infinite)
        return false;
    if (b.infinite)
        return true;
    return a.v < b.v;
}

GrValue gr_min(const GrValue& a, const GrValue& b) {
    return gr_less(a, b) ? a : b;
}

GrValue gr_max(const GrValue& a, const GrValue& b) {
    return gr_less(a, b) ? b : a;
}

GrValue gr_add(const GrValue& a, const GrValue& b) {
    if (a.infinite || b.infinite)
        return GrValue::inf();
    return GrValue::fin(a.v + b.v);
}

std::string gr_to_string(const GrValue& a) {
    return a.infinite ? "inf" : std::to_string(a.v);
}

// ---------------------------------------------------------------------------
// Propagation

int DescriptorGraph::find_node(const std::string& name) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].name == name)
            return static_cast<int>(i);
    return -1;
}

namespace {

struct Propagator {
    DescriptorGraph& g;
    std::vector<PropagationStep>& log;
    std::optional<Contradiction>& contradiction;
    bool changed = false;

    bool halted() const { return contradiction.has_value(); }

    void record_contradiction(int node) {
        Contradiction c;
        c.node = node;
        for (const PropagationStep& step : log)
            if (step.node == node)
                c.chain.push_back(step);
        contradiction = std::move(c);
    }

    void tighten_upper(int node, const GrValue& bound, const std::string& rule) {
        if (halted())
            return;
        DescriptorNode& n = g.nodes[static_cast<std::size_t>(node)];
        if (!gr_less(bound, n.upper))
            return;
        log.push_back({node, true, n.upper, bound, rule});
        n.upper = bound;
        changed = true;
        if (gr_less(n.upper, n.lower))
            record_contradiction(node);
    }

    void tighten_lower(int node, const GrValue& bound, const std::string& rule) {
        if (halted())
            return;
        DescriptorNode& n = g.nodes[static_cast<std::size_t>(node)];
        if (!gr_less(n.lower, bound))
            return;
        log.push_back({node, false, n.lower, bound, rule});
        n.lower = bound;
        changed = true;
        if (gr_less(n.upper, n.lower))
            record_contradiction(node);
    }

    const DescriptorNode& node(int i) const {
        return g.nodes[static_cast<std::size_t>(i)];
    }

    void apply(const DescriptorEdge& e) {
        switch (e.kind) {
        case EdgeKind::Hereditary:
        case EdgeKind::Quotient:
        case EdgeKind::HereditarySum: {
            const char* name = e.kind == EdgeKind::Hereditary ? "hereditary"
                               : e.kind == EdgeKind::Quotient ? "quotient"
                                                              : "hereditary-sum";
            const int parent = e.others.at(0);
            tighten_upper(e.node, node(parent).upper,
                          std::string(name) + " <= " + node(parent).name);
            tighten_lower(parent, node(e.node).lower,
                          std::string(name) + " >= " + node(e.node).name);
            break;
        }
        case EdgeKind::MatrixStable: {
            const int other = e.others.at(0);
            tighten_upper(e.node, node(other).upper,
                          "matrix-stable = " + node(other).name);
            tighten_upper(other, node(e.node).upper,
                          "matrix-stable = " + node(e.node).name);
            tighten_lower(e.node, node(other).lower,
                          "matrix-stable = " + node(other).name);
            tighten_lower(other, node(e.node).lower,
                          "matrix-stable = " + node(e.node).name);
            break;
        }
        case EdgeKind::Tensor: {
            GrValue best = GrValue::inf();
            for (int f : e.others)
                best = gr_min(best, node(f).upper);
            tighten_upper(e.node, best, "tensor <= min of factors");
            for (int f : e.others)
                tighten_lower(f, node(e.node).lower,
                              "tensor factor >= " + node(e.node).name);
            break;
        }
        case EdgeKind::DirectSum: {
            GrValue total = GrValue::fin(1);
            bool first = true;
            for (int f : e.others) {
                total = first ? node(f).upper : gr_add(total, node(f).upper);
                first = false;
            }
            if (!e.others.empty())
                tighten_upper(e.node, total, "direct sum <= sum of summands");
            // Contrapositive: a summand must carry what the others cannot.
            for (std::size_t j = 0; j < e.others.size(); ++j) {
                GrValue rest = GrValue::fin(1);
                bool rest_first = true;
                bool rest_inf = false;
                for (std::size_t k = 0; k < e.others.size(); ++k) {
                    if (k == j)
                        continue;
                    const GrValue u = node(e.others[k]).upper;
                    if (u.infinite) {
                        rest_inf = true;
                        break;
                    }
                    rest = rest_first ? u : gr_add(rest, u);
                    rest_first = false;
                }
                if (rest_inf)
                    continue;
                const GrValue low = node(e.node).lower;
                if (low.infinite) {
                    tighten_lower(e.others[j], GrValue::inf(),
                                  "direct sum lower via " + node(e.node).name);
                } else {
                    const std::int64_t rest_v = rest_first ? 0 : rest.v;
                    const std::int64_t need = low.v - rest_v;
                    if (need > 1)
                        tighten_lower(e.others[j], GrValue::fin(need),
                                      "direct sum lower via " + node(e.node).name);
                }
            }
            break;
        }
        case EdgeKind::Limit: {
            GrValue sup = GrValue::fin(1);
            for (int f : e.others)
                sup = gr_max(sup, node(f).upper);
            if (!e.others.empty())
                tighten_upper(e.node, sup, "limit <= sup of stage bounds");
            break;
        }
        case EdgeKind::Extension: {
            const int ideal = e.others.at(0);
            const int quotient = e.others.at(1);
            if (node(ideal).upper == GrValue::fin(1) &&
                node(quotient).upper == GrValue::fin(1))
                tighten_upper(e.node, GrValue::fin(1),
                              "extension of gr-1 ideal by gr-1 quotient");
            break;
        }
        }
    }
};

}  // namespace

PropagationResult propagate_gr(DescriptorGraph graph) {
    for (const DescriptorNode& n : graph.nodes)
        if (gr_less(n.upper, n.lower))
            throw std::invalid_argument("propagate_gr: node '" + n.name +
                                        "' starts with lower > upper");
    for (const DescriptorEdge& e : graph.edges) {
        auto in_range = [&](int i) {
            return i >= 0 && i < static_cast<int>(graph.nodes.size());
        };
        if (!in_range(e.node))
            throw std::invalid_argument("propagate_gr: edge subject out of range");
        for (int o : e.others)
            if (!in_range(o))
                throw std::invalid_argument("propagate_gr: edge member out of range");
        const std::size_t expected =
            e.kind == EdgeKind::Extension ? 2
            : (e.kind == EdgeKind::Hereditary || e.kind == EdgeKind::Quotient ||
               e.kind == EdgeKind::MatrixStable || e.kind == EdgeKind::HereditarySum)
                ? 1
                : e.others.size();
        if (e.others.size() != expected || e.others.empty())
            throw std::invalid_argument("propagate_gr: edge arity mismatch");
    }

    PropagationResult result;
    result.graph = std::move(graph);
    Propagator prop{result.graph, result.log, result.contradiction};

    // Every pass either tightens some integer bound or stops; bounds are
    // bounded by the inputs, so the fixpoint arrives within
    // |edges| * max-bound passes.
    const std::int64_t hard_cap =
        64 + static_cast<std::int64_t>(result.graph.edges.size() + 1) * 1024;
    while (true) {
        prop.changed = false;
        for (const DescriptorEdge& e : result.graph.edges) {
            prop.apply(e);
            if (prop.halted())
                break;
        }
        ++result.passes;
        if (!prop.changed || prop.halted())
            break;
        if (result.passes > hard_cap)
            throw std::logic_error("propagate_gr: failed to reach a fixpoint");
    }
    return result;
}

// ---------------------------------------------------------------------------
// Binomial decomposition

std::vector<std::pair<std::int64_t, Int>> binomial_decompose(std::int64_t k) {
    if (k < 1)
        throw std::invalid_argument("binomial_decompose: k must be >= 1");
    std::vector<std::pair<std::int64_t, Int>> out;
    Int c = 1;  // C(k, 0)
    for (std::int64_t i = 0; i <= k; ++i) {
        out.emplace_back(i, c);
        c = c * (k - i) / (i + 1);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Topological dimension growth

namespace {

// k * dim / rank^k as an exact rational.
Rational power_ratio(const Int& dim, const Int& rank, std::int64_t k) {
    return Rational(Int(k) * dim, ipow(rank, k));
}

}  // namespace

TdgResult tdg_estimate(const GrowthProfile& profile, std::int64_t n_max,
                       const Rational& tolerance) {
    if (n_max < 1)
        throw std::invalid_argument("tdg_estimate: n_max must be >= 1");
    if (tolerance <= 0)
        throw std::invalid_argument("tdg_estimate: tolerance must be positive");

    TdgResult result;
    if (profile.closed_form) {
        const auto& cf = *profile.closed_form;
        if (cf.c < 0 || cf.k < 0)
            throw std::invalid_argument("tdg_estimate: malformed closed form");
        const std::int64_t answer = (cf.c == 0) ? 1 : cf.k + 1;
        if (answer > n_max) {
            result.kind = TdgResult::Kind::AboveMax;
            result.detail = "closed form needs exponent " + std::to_string(answer);
        } else {
            result.kind = TdgResult::Kind::Value;
            result.value = answer;
        }
        return result;
    }

    const auto& entries = profile.entries;
    if (entries.empty())
        throw std::invalid_argument("tdg_estimate: empty profile");
    for (const auto& [dim, rank] : entries) {
        if (dim < 0 || rank < 1)
            throw std::invalid_argument("tdg_estimate: entries need dim >= 0, rank >= 1");
    }
    for (std::size_t i = 1; i < entries.size(); ++i)
        if (entries[i].second < entries[i - 1].second)
            throw std::invalid_argument("tdg_estimate: ranks must be nondecreasing");

    const std::size_t len = entries.size();
    if (len < 4) {
        result.kind = TdgResult::Kind::Inconclusive;
        result.detail = "table of " + std::to_string(len) +
                        " entries is too short to judge a tail";
        return result;
    }
    const std::size_t window = std::max<std::size_t>(2, (len + 3) / 4);
    const std::size_t start = len - window;

    for (std::int64_t k = 1; k <= n_max; ++k) {
        bool decreasing = true;
        bool below = true;
        Rational prev;
        for (std::size_t i = start; i < len; ++i) {
            const Rational r = power_ratio(entries[i].first, entries[i].second, k);
            if (i > start && r > prev)
                decreasing = false;
            if (r >= tolerance)
                below = false;
            prev = r;
        }
        if (decreasing && below) {
            result.kind = TdgResult::Kind::Value;
            result.value = k;
            return result;
        }
    }
    result.kind = TdgResult::Kind::AboveMax;
    result.detail = "no exponent <= " + std::to_string(n_max) +
                    " passes the tail test";
    return result;
}

// ---------------------------------------------------------------------------
// Rank formulas

Int nistor_sr(const Int& dim_x, const Int& rank_p) {
    if (dim_x < 0)
        throw std::invalid_argument("nistor_sr: dimension must be >= 0");
    if (rank_p < 1)
        throw std::invalid_argument("nistor_sr: rank must be >= 1");
    return ceil_div(dim_x / 2, rank_p) + 1;
}

Int rr_upper(const Int& sr) {
    if (sr < 1)
        throw std::invalid_argument("rr_upper: stable rank must be >= 1");
    return 2 * sr - 1;
}

// ---------------------------------------------------------------------------
// Rank-one pruning

PruneVerdict prune_rank_one(const RankOneSystem& system) {
    const std::size_t n_stages = system.stage_ranks.size();
    if (n_stages == 0)
        throw std::invalid_argument("prune_rank_one: no stages");
    if (system.maps.size() + 1 != n_stages)
        throw std::invalid_argument("prune_rank_one: need one map per consecutive pair");

    // Positions (into the full summand list) of the rank-one summands.
    std::vector<std::vector<std::int64_t>> rank_one(n_stages);
    for (std::size_t i = 0; i < n_stages; ++i)
        for (std::size_t l = 0; l < system.stage_ranks[i].size(); ++l)
            if (system.stage_ranks[i][l] == 1)
                rank_one[i].push_back(static_cast<std::int64_t>(l) + 1);

    for (std::size_t i = 0; i + 1 < n_stages; ++i) {
        if (system.maps[i].size() != rank_one[i].size())
            throw std::invalid_argument("prune_rank_one: map rows mismatch at stage " +
                                        std::to_string(i + 1));
        for (const auto& row : system.maps[i])
            if (row.size() != rank_one[i + 1].size())
                throw std::invalid_argument(
                    "prune_rank_one: map columns mismatch at stage " +
                    std::to_string(i + 2));
    }

    // live[s] = rank-one summands of the current stage reachable from stage 1
    // through nonzero partial maps; back-pointers rebuild a witness chain.
    std::vector<std::vector<int>> back(n_stages);
    std::vector<char> live(rank_one[0].size(), 1);
    back[0].assign(rank_one[0].size(), -1);

    PruneVerdict verdict;
    for (std::size_t i = 0; i < n_stages; ++i) {
        const bool any_live =
            std::any_of(live.begin(), live.end(), [](char c) { return c != 0; });
        if (!any_live) {
            verdict.clean = true;
            verdict.clean_stage = static_cast<std::int64_t>(i) + 1;
            return verdict;
        }
        if (i + 1 == n_stages)
            break;
        std::vector<char> next_live(rank_one[i + 1].size(), 0);
        back[i + 1].assign(rank_one[i + 1].size(), -1);
        for (std::size_t s = 0; s < live.size(); ++s) {
            if (!live[s])
                continue;
            for (std::size_t t = 0; t < next_live.size(); ++t) {
                if (system.maps[i][s][t] && !next_live[t]) {
                    next_live[t] = 1;
                    back[i + 1][t] = static_cast<int>(s);
                }
            }
        }
        live = std::move(next_live);
    }

    // A chain survives the whole window: rebuild one witness path.
    int pos = -1;
    for (std::size_t t = 0; t < live.size(); ++t)
        if (live[t]) {
            pos = static_cast<int>(t);
            break;
        }
    std::vector<std::pair<std::int64_t, std::int64_t>> chain;
    for (std::size_t i = n_stages; i-- > 0;) {
        chain.emplace_back(static_cast<std::int64_t>(i) + 1,
                           rank_one[i][static_cast<std::size_t>(pos)]);
        if (i > 0)
            pos = back[i][static_cast<std::size_t>(pos)];
    }
    std::reverse(chain.begin(), chain.end());
    verdict.clean = false;
    verdict.chain = std::move(chain);
    return verdict;
}

// ---------------------------------------------------------------------------
// Very slow dimension growth exponent

std::int64_t very_slow_exponent(const Int& n, const Int& k, const Rational& eps) {
    if (n <= 1)
        throw std::invalid_argument("very_slow_exponent: no exponent exists for n <= 1");
    if (k < 1)
        throw std::invalid_argument("very_slow_exponent: k must be >= 1");
    if (eps <= 0)
        throw std::invalid_argument("very_slow_exponent: eps must be positive");

    auto satisfied = [&](std::int64_t r) {
        // (k r)^3 / n^r < eps
        return Rational(ipow(k * r, 3), ipow(n, r)) < eps;
    };
    // The ratio is non-increasing from r0 on: (r+1)^3 <= n r^3.
    std::int64_t r0 = 1;
    while (ipow(Int(r0 + 1), 3) > n * ipow(Int(r0), 3)) {
        ++r0;
        if (r0 > 1000000)
            throw std::logic_error("very_slow_exponent: monotonicity bound runaway");
    }
    std::int64_t r_end = r0;
    while (!satisfied(r_end)) {
        ++r_end;
        if (r_end > 4000000)
            throw std::logic_error("very_slow_exponent: search bound runaway");
    }
    // Last violation at or below r_end decides the answer.
    std::int64_t last_bad = 0;
    for (std::int64_t r = 1; r <= r_end; ++r)
        if (!satisfied(r))
            last_bad = r;
    return last_bad + 1;
}

}  // namespace villab::rank_calculus
