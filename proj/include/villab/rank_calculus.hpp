#pragma once

#include "villab/ints.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace villab::rank_calculus {

// Growth-rank values live in {1, 2, ...} u {inf}.  The degenerate value 0
// that shows up for infinite tensor powers is normalized to 1.
struct GrValue {
    bool infinite = false;
    std::int64_t v = 1;  // meaningful when finite; always >= 1

    static GrValue inf() { return GrValue{true, 0}; }
    static GrValue fin(std::int64_t x);

    bool operator==(const GrValue&) const = default;
};

bool gr_less(const GrValue& a, const GrValue& b);
GrValue gr_min(const GrValue& a, const GrValue& b);
GrValue gr_max(const GrValue& a, const GrValue& b);
GrValue gr_add(const GrValue& a, const GrValue& b);  // inf-absorbing
std::string gr_to_string(const GrValue& a);

enum class EdgeKind {
    Hereditary,     // node is a hereditary subalgebra of others[0]
    Quotient,       // node is a quotient of others[0]
    MatrixStable,   // node = others[0] tensored with M_k or K: equal gr
    Tensor,         // node = tensor product of others
    DirectSum,      // node = direct sum of others
    HereditarySum,  // node = direct sum of hereditary subalgebras of others[0]
    Limit,          // node = inductive limit of the stages in others
    Extension,      // node has ideal others[0] and quotient others[1]
};

struct DescriptorNode {
    std::string name;
    GrValue lower = GrValue::fin(1);
    GrValue upper = GrValue::inf();
};

struct DescriptorEdge {
    EdgeKind kind;
    int node = 0;             // subject
    std::vector<int> others;  // related nodes; see EdgeKind
};

struct DescriptorGraph {
    std::vector<DescriptorNode> nodes;
    std::vector<DescriptorEdge> edges;

    int find_node(const std::string& name) const;  // -1 when absent
};

struct PropagationStep {
    int node;
    bool is_upper;
    GrValue from, to;
    std::string rule;
};

struct Contradiction {
    int node;
    std::vector<PropagationStep> chain;  // the tightenings that led here
};

struct PropagationResult {
    DescriptorGraph graph;
    std::int64_t passes = 0;
    std::vector<PropagationStep> log;
    std::optional<Contradiction> contradiction;
};

// Interval propagation to fixpoint over the inequality rules:
//   hereditary / quotient / hereditary-sum:  gr(X) <= gr(A)
//   matrix-stabilization:                    gr(B)  = gr(A)
//   tensor:                                  gr(T) <= min_j gr(F_j)
//   direct sum:                              gr(S) <= sum_j gr(F_j)
//   limit:                                   gr(L) <= max_j gr(A_j)
//   extension:                               gr(I) = gr(Q) = 1 => gr(A) = 1
// Bounds only tighten; a contradiction (lower > upper) stops propagation and
// carries that node's derivation chain.
PropagationResult propagate_gr(DescriptorGraph graph);

// Binomial decomposition of a k-fold tensor power of a direct sum: summand
// A^i (x) B^(k-i) appears with multiplicity C(k, i).
std::vector<std::pair<std::int64_t, Int>> binomial_decompose(std::int64_t k);

// Tabulated (dim_i, rank_i) pairs, or the closed form dim = c * rank^k with
// rank understood to be unbounded.
struct GrowthProfile {
    struct ClosedForm {
        Int c;
        std::int64_t k = 0;
    };
    std::vector<std::pair<Int, Int>> entries;
    std::optional<ClosedForm> closed_form;
};

struct TdgResult {
    enum class Kind { Value, AboveMax, Inconclusive };
    Kind kind = Kind::Inconclusive;
    std::int64_t value = 0;          // when Kind::Value
    std::string detail;              // offending window on Inconclusive
};

// Least k <= n_max whose tensor-power ratios k*dim_i/rank_i^k are judged to
// tend to zero.  Closed form: exactly k+1 (or 1 when c = 0).  Tabulated: the
// tail window (last quarter, at least two entries) must be non-increasing and
// below the tolerance; tables shorter than four entries are inconclusive.
TdgResult tdg_estimate(const GrowthProfile& profile, std::int64_t n_max,
                       const Rational& tolerance = Rational(1, 1000));

// Stable rank of a cut-down homogeneous algebra over a dim_x-dimensional
// space: ceil(floor(dim_x/2) / rank_p) + 1.
Int nistor_sr(const Int& dim_x, const Int& rank_p);

// Real-rank bound rr <= 2 sr - 1.
Int rr_upper(const Int& sr);

// Rank-one summand pruning across a window of stages.  stage_ranks[i] lists
// every summand rank at stage i; maps[i][s][t] says whether the partial map
// from the s-th rank-one summand of stage i to the t-th of stage i+1 is
// nonzero.
struct RankOneSystem {
    std::vector<std::vector<Int>> stage_ranks;
    std::vector<std::vector<std::vector<bool>>> maps;
};

struct PruneVerdict {
    bool clean = false;
    std::int64_t clean_stage = 0;  // first stage with no surviving chain
    // Surviving chain as (stage, summand index into the full stage list),
    // 1-based, when not clean.
    std::vector<std::pair<std::int64_t, std::int64_t>> chain;
};

PruneVerdict prune_rank_one(const RankOneSystem& system);

// Least r from which (k*r)^3 / n^r stays below eps.  The ratio rises before
// the exponential takes over, so the scan verifies the tail, not just the
// first hit.
std::int64_t very_slow_exponent(const Int& n, const Int& k, const Rational& eps);

}  // namespace villab::rank_calculus
