#pragma once

#include "villab/bundles.hpp"
#include "villab/ints.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace villab::construction {

// Stage engine for the inductive system over growing sphere products.  Stage i
// lives over X_i = (S^2)^{N_i}; the cut-down projection p_i is a Whitney sum
// of one trivial line and line bundles supported on per-stage index blocks.
// The connecting map mixes a first-factor pullback with m_{i+1} point
// evaluations tensored by the block-1 line bundle, so
//
//   p_{i+1}     = w*(p_i)      + (m_{i+1} * d_i)        * xi_{I_1^{i+1}}
//   phi_{i+1}   = w*(phi_i)    + (m_{i+1} * rank(phi_i)) * xi_{I_1^{i+1}}
//
// with d_{i+1} = d_i * (1 + m_{i+1}).  Parameters are exact big integers; the
// bundles themselves are materialized only while N_i stays under the policy's
// cap (the canonical parameters explode quickly; the parameter recursion keeps
// going regardless).

struct StagePolicy {
    // Default m-rule: least m_{i+1} >= 1 with
    //   d_{i+1}^{target_n + 1} >= 2^{i+1} * growth_multiplier * N_i,
    // which makes the dimension-growth ratio tail summable.
    Int growth_multiplier = 2;
    // Override: constant m_{i+1} at every stage (must be >= 1).
    std::optional<std::int64_t> fixed_m;
    // Materialize p_i / phi_i only while N_i <= materialize_cap.
    Int materialize_cap = 100000;
};

struct StageOptions {
    std::int64_t target_n = 1;
    std::optional<std::int64_t> override_n1;  // toy runs; flags the run non-canonical
    bool discs = false;     // track a polydisc factor of real dimension 2*i*d_i^2
    bool infinite = false;  // perforation exponent i*target_n at stage i
    StagePolicy policy;
};

struct Block {
    Int lo, hi;  // inclusive coordinate range

    Int size() const { return hi - lo + 1; }
    bool operator==(const Block&) const = default;
};

struct StageState {
    std::int64_t target_n = 1;
    std::int64_t index = 1;    // i
    std::int64_t exponent = 1; // perforation target at this stage
    Int n_i, N_i, N_prev, m_i, d_i;
    std::vector<Block> blocks;  // I_l^i for l = 1..exponent
    std::optional<bundles::VectorBundle> p;       // over ambient N_i
    std::optional<bundles::VectorBundle> phi_xi;  // image of xi_{I_1^1} at stage i
    std::optional<Int> disc_dim;                  // i * d_i^2 when discs enabled
    bool canonical = true;

    bool materialized() const { return p.has_value(); }
    // rank(phi_xi) = prod_{j<=i} (1 + m_j) = d_i / 3, tracked arithmetically.
    Int phi_rank() const { return d_i / 3; }
};

// Stage 1: n_1 = 3^target_n (or the override), p_1 = theta_1 + 2 xi_{I_1^1},
// d_1 = 3.  Throws std::invalid_argument on target_n < 1 or override < 1.
StageState init_stage(const StageOptions& opt);

// One step of the recursion.  The perforation exponent of the new stage is
// target_n, or (i+1)*target_n in the infinite variant; n_{i+1} is minimal with
// N_{i+1} - N_i >= d_{i+1}^exponent.
StageState advance_stage(const StageState& s, const StageOptions& opt);

// Parameter recomputation of advance_stage under the infinite-variant
// exponent (prev.index + 1) * target_n; other recursions unchanged.
StageState infinite_variant_blocks(const StageState& prev, const StageOptions& opt);

// Invariant checks; throw std::logic_error naming the violated invariant.
void validate_stage(const StageState& s);
void validate_succession(const StageState& prev, const StageState& next);

class ExpansionCapExceeded : public std::runtime_error {
public:
    ExpansionCapExceeded(const Int& predicted, const Int& cap)
        : std::runtime_error("expansion cap exceeded: " + predicted.str() +
                             " summands > cap " + cap.str()),
          predicted_(predicted) {}
    const Int& predicted() const { return predicted_; }

private:
    Int predicted_;
};

class StageNotMaterialized : public std::runtime_error {
public:
    explicit StageNotMaterialized(const StageState& s)
        : std::runtime_error("stage " + std::to_string(s.index) +
                             " not materialized (N_i = " + s.N_i.str() +
                             " exceeds the materialization cap)") {}
};

// Fully expanded Whitney sum of line bundles representing
//   2 phi_i(xi_{I_1^1}) (x) p_i^2 (x) ... (x) p_i^e
// over ambient e * N_i, where p_i^l is the pullback of p_i into block l and
// trivial tensor factors drop out.  Its rank is 2 * (d_i/3) * d_i^{e-1}.
// Throws StageNotMaterialized or ExpansionCapExceeded.
bundles::VectorBundle perforation_expand(
    const StageState& s, const Int& cap,
    std::optional<std::int64_t> exponent_override = std::nullopt);

enum class CertifyMethod { Direct, Recursive };

struct RecursiveStep {
    std::int64_t stage;
    Int block_size;  // N_j - N_{j-1}
    Int required;    // d_j^exponent
    bool ok;
};

struct PerforationCertificate {
    std::int64_t stage = 1;
    std::string method;
    std::int64_t exponent = 1;
    Int expansion_rank;
    // The non-positivity claim: [expansion] - [theta_1].  Materialized when
    // the expansion is small enough to embed verbatim.
    std::optional<bundles::KClass> claim;
    std::string claim_summary;
    std::optional<bundles::HallResult> base_witness;
    std::vector<RecursiveStep> steps;  // recursive method only
    bool theta_summand_checked = false;
};

struct CertifyOutcome {
    std::optional<PerforationCertificate> certificate;
    std::string failure_reason;  // empty on success
    std::optional<bundles::HallResult> failure_witness;

    bool ok() const { return certificate.has_value(); }
};

// chain = stages 1..i of one campaign.  Direct: Hall check on the expanded
// bundle of the last stage.  Recursive: stage-1 base case plus the per-stage
// block-size conditions N_j - N_{j-1} >= d_j^exponent that certify the
// point-evaluation part at every step.
CertifyOutcome certify_perforation(
    std::span<const StageState> chain, CertifyMethod method, const Int& direct_cap,
    std::optional<std::int64_t> exponent_override = std::nullopt);

struct RatioEntry {
    std::int64_t stage;
    Rational real_dim_ratio;  // k * (2 N_i + 2 i d_i^2) / d_i^k
    Rational compact_ratio;   // k * (N_i + i d_i^2) / d_i^k
};

// Exact dimension-growth ratios for the k-fold tensor power, in both the
// real-dimension convention (dim (S^2)^N = 2N) and the sphere-count one.
std::vector<RatioEntry> ratio_trace(std::span<const StageState> chain,
                                    std::int64_t k);

struct Campaign {
    StageOptions options;
    std::vector<StageState> stages;
};

// init + (stage_count - 1) advances, validating invariants at every step.
Campaign run_stages(const StageOptions& opt, std::int64_t stage_count);

}  // namespace villab::construction
