#include "villab/construction.hpp"

#include <algorithm>

namespace villab::construction {

using bundles::LineBundle;
using bundles::Reindexing;
using bundles::VectorBundle;

namespace {

void check(bool cond, const std::string& what) {
    if (!cond)
        throw std::logic_error("stage invariant violated: " + what);
}

std::vector<Block> make_blocks(std::int64_t index, std::int64_t exponent,
                               const Int& N_i, const Int& N_prev) {
    // Stage 1 blocks are the full coordinate blocks {.., l*N_1}; from stage 2
    // on, block l starts after the pulled-back stage-(i-1) coordinates.
    const Int low_offset = (index == 1) ? Int(0) : N_prev;
    std::vector<Block> blocks;
    blocks.reserve(static_cast<std::size_t>(exponent));
    for (std::int64_t l = 1; l <= exponent; ++l) {
        Block b;
        b.lo = Int(l - 1) * N_i + low_offset + 1;
        b.hi = Int(l) * N_i;
        blocks.push_back(std::move(b));
    }
    return blocks;
}

Int least_m(const StageState& s, const StageOptions& opt) {
    if (opt.policy.fixed_m) {
        const Int m = *opt.policy.fixed_m;
        if (m < 1)
            throw std::invalid_argument(
                "policy produced m = 0; the point-evaluation summand is required");
        return m;
    }
    const Int rhs =
        ipow(2, s.index + 1) * opt.policy.growth_multiplier * s.N_i;
    Int m = 1;
    while (ipow(s.d_i * (1 + m), opt.target_n + 1) < rhs) {
        ++m;
        if (m > 1000000)
            throw std::runtime_error("m search exceeded sanity bound");
    }
    return m;
}

}  // namespace

StageState init_stage(const StageOptions& opt) {
    if (opt.target_n < 1)
        throw std::invalid_argument("init_stage: target_n must be >= 1");
    Int n1;
    if (opt.override_n1) {
        if (*opt.override_n1 < 1)
            throw std::invalid_argument("init_stage: override n1 must be >= 1");
        n1 = *opt.override_n1;
    } else {
        n1 = ipow(3, opt.target_n);
    }

    StageState s;
    s.target_n = opt.target_n;
    s.index = 1;
    s.exponent = opt.target_n;  // the infinite variant coincides at stage 1
    s.n_i = n1;
    s.N_prev = 1;
    s.N_i = n1;
    s.m_i = 0;
    s.d_i = 3;
    s.canonical = !opt.override_n1.has_value();
    s.blocks = make_blocks(1, s.exponent, s.N_i, s.N_prev);

    if (s.N_i <= opt.policy.materialize_cap) {
        const std::int64_t N = to_int64(s.N_i);
        const LineBundle xi = LineBundle::xi(N, IndexSet::range(1, N));
        VectorBundle p(N);
        p.add_trivial(1);
        p.add_line(xi, 2);
        s.p = std::move(p);
        s.phi_xi = VectorBundle::from_line(xi, 1);
    }
    if (opt.discs)
        s.disc_dim = s.d_i * s.d_i;

    validate_stage(s);
    return s;
}

StageState advance_stage(const StageState& s, const StageOptions& opt) {
    const std::int64_t i_next = s.index + 1;
    const std::int64_t exponent_next =
        opt.infinite ? i_next * opt.target_n : opt.target_n;

    const Int m = least_m(s, opt);
    const Int d_next = s.d_i * (1 + m);

    // n_{i+1} minimal with N_i * (n_{i+1} - 1) >= d_{i+1}^exponent.
    const Int need = ipow(d_next, exponent_next);
    const Int n_next = 1 + ceil_div(need, s.N_i);
    const Int N_next = s.N_i * n_next;

    StageState t;
    t.target_n = s.target_n;
    t.index = i_next;
    t.exponent = exponent_next;
    t.n_i = n_next;
    t.N_i = N_next;
    t.N_prev = s.N_i;
    t.m_i = m;
    t.d_i = d_next;
    t.canonical = s.canonical;
    t.blocks = make_blocks(i_next, exponent_next, N_next, s.N_i);

    if (s.materialized() && N_next <= opt.policy.materialize_cap) {
        const std::int64_t N = to_int64(N_next);
        const Reindexing first_factor = Reindexing::shift(0, N);
        const LineBundle xi_new =
            LineBundle::xi(N, IndexSet::range(to_int64(s.N_i) + 1, N));
        VectorBundle p = pullback(*s.p, first_factor);
        p.add_line(xi_new, m * s.d_i);
        t.p = std::move(p);
        VectorBundle phi = pullback(*s.phi_xi, first_factor);
        phi.add_line(xi_new, m * s.phi_rank());
        t.phi_xi = std::move(phi);
    }
    if (s.disc_dim)
        t.disc_dim = Int(i_next) * d_next * d_next;

    validate_stage(t);
    validate_succession(s, t);
    return t;
}

StageState infinite_variant_blocks(const StageState& prev, const StageOptions& opt) {
    StageOptions infinite = opt;
    infinite.infinite = true;
    return advance_stage(prev, infinite);
}

void validate_stage(const StageState& s) {
    check(s.index >= 1, "index >= 1");
    check(s.N_i == s.N_prev * s.n_i, "N_i = N_{i-1} * n_i");
    check(static_cast<std::int64_t>(s.blocks.size()) == s.exponent,
          "one block per tensor factor");
    const Int block_size = s.N_i - (s.index == 1 ? Int(0) : s.N_prev);
    for (std::size_t l = 0; l < s.blocks.size(); ++l) {
        const Block& b = s.blocks[l];
        check(b.size() == block_size, "|I_l^i| = N_i - N_{i-1}");
        check(b.hi == Int(static_cast<std::int64_t>(l) + 1) * s.N_i,
              "block l ends at l * N_i");
        check(b.lo >= 1 && b.hi <= Int(s.exponent) * s.N_i,
              "blocks inside {1..e*N_i}");
        if (l > 0)
            check(s.blocks[l - 1].hi < b.lo, "blocks pairwise disjoint");
    }
    if (s.index == 1) {
        check(s.d_i == 3, "d_1 = 3");
    }
    if (s.materialized()) {
        check(s.phi_xi.has_value(), "phi materialized alongside p");
        check(s.p->rank() == s.d_i, "rank(p_i) = d_i");
        check(s.p->trivial_rank() == 1, "p_i has exactly one trivial summand");
        check(s.d_i % 3 == 0, "d_i divisible by 3");
        check(s.phi_xi->rank() == s.phi_rank(), "rank(phi_i) = d_i / 3");
        check(s.phi_xi->trivial_rank() == 0, "phi_i has no trivial summand");
        if (s.index == 1) {
            VectorBundle expected(to_int64(s.N_i));
            expected.add_trivial(1);
            expected.add_line(
                LineBundle::xi(to_int64(s.N_i), IndexSet::range(1, to_int64(s.N_i))),
                2);
            check(*s.p == expected, "p_1 = theta_1 + 2 xi_{I_1^1}");
        }
    }
    if (s.disc_dim)
        check(*s.disc_dim == Int(s.index) * s.d_i * s.d_i, "disc_dim = i * d_i^2");
}

void validate_succession(const StageState& prev, const StageState& next) {
    check(next.index == prev.index + 1, "indices consecutive");
    check(next.N_prev == prev.N_i, "N_prev chains");
    check(next.m_i >= 1, "m_{i+1} >= 1");
    check(next.d_i == prev.d_i * (1 + next.m_i), "d_{i+1} = d_i (1 + m_{i+1})");
    const Int need = ipow(next.d_i, next.exponent);
    check(next.N_i - prev.N_i >= need, "N_{i+1} - N_i >= d_{i+1}^e");
    // Minimality: one factor less would violate the block-size bound, hence
    // the upper bound N_{i+1} <= d_{i+1}^e + 2 N_i.
    check(prev.N_i * (next.n_i - 2) < need, "n_{i+1} minimal");
    check(next.N_i <= need + 2 * prev.N_i, "N_{i+1} <= d_{i+1}^e + 2 N_i");
}

bundles::VectorBundle perforation_expand(
    const StageState& s, const Int& cap,
    std::optional<std::int64_t> exponent_override) {
    if (!s.materialized())
        throw StageNotMaterialized(s);
    const std::int64_t e = exponent_override.value_or(s.exponent);
    if (e < 1)
        throw std::invalid_argument("perforation_expand: exponent must be >= 1");

    const Int predicted = 2 * s.phi_rank() * ipow(s.d_i, e - 1);
    if (predicted > cap)
        throw ExpansionCapExceeded(predicted, cap);

    const std::int64_t N = to_int64(s.N_i);
    const std::int64_t M = to_int64(Int(e) * s.N_i);

    VectorBundle acc(M);
    for (const auto& [line, count] : s.phi_xi->lines())
        acc.add_line(pullback(line, Reindexing::shift(0, M)), 2 * count);
    for (std::int64_t l = 2; l <= e; ++l)
        acc = tensor(acc, pullback(*s.p, Reindexing::shift((l - 1) * N, M)));

    check(acc.trivial_rank() == 0, "expansion is a pure sum of lines");
    check(acc.rank() == predicted, "expansion rank = 2 (d_i/3) d_i^{e-1}");
    return acc;
}

namespace {

constexpr std::int64_t kClaimEmbedCap = 256;

std::string claim_summary_text(const StageState& s, std::int64_t e,
                               const Int& rank) {
    return "2*[phi_" + std::to_string(s.index) + "(xi_block1) (x) p_" +
           std::to_string(s.index) + "^2 .. p_" + std::to_string(s.index) + "^" +
           std::to_string(e) + "] - [theta_1] over (S2)^" +
           (Int(e) * s.N_i).str() + " is not a positive class (minuend rank " +
           rank.str() + ")";
}

void attach_claim(PerforationCertificate& cert, const StageState& s,
                  std::int64_t e, const Int& cap) {
    cert.claim_summary = claim_summary_text(s, e, cert.expansion_rank);
    if (!s.materialized() || cert.expansion_rank > kClaimEmbedCap)
        return;
    const VectorBundle expansion = perforation_expand(s, cap, e);
    cert.claim = bundles::KClass::difference(
        expansion, VectorBundle::trivial(expansion.ambient(), 1));
}

CertifyOutcome fail(std::string reason,
                    std::optional<bundles::HallResult> witness = std::nullopt) {
    CertifyOutcome out;
    out.failure_reason = std::move(reason);
    out.failure_witness = std::move(witness);
    return out;
}

}  // namespace

CertifyOutcome certify_perforation(std::span<const StageState> chain,
                                   CertifyMethod method, const Int& direct_cap,
                                   std::optional<std::int64_t> exponent_override) {
    if (chain.empty())
        throw std::invalid_argument("certify_perforation: empty chain");
    const StageState& s = chain.back();
    const std::int64_t e = exponent_override.value_or(s.exponent);

    if (method == CertifyMethod::Direct) {
        VectorBundle expansion(0);
        try {
            expansion = perforation_expand(s, direct_cap, e);
        } catch (const StageNotMaterialized& ex) {
            return fail(ex.what());
        } catch (const ExpansionCapExceeded& ex) {
            return fail(ex.what());
        }
        if (s.p->trivial_rank() != 1)
            return fail(
                "theta_1 reduction failed: p_i lacks its single trivial summand "
                "(report, do not patch)");

        std::vector<LineBundle> lines;
        lines.reserve(static_cast<std::size_t>(to_int64(expansion.rank())));
        for (const auto& [line, count] : expansion.lines())
            for (Int c = 0; c < count; ++c)
                lines.push_back(line);

        auto vil = bundles::vil_obstruction(lines, 1);
        if (!vil) {
            // l < k always holds here (rank >= 2), so the failure is Hall's.
            bundles::HallResult witness = bundles::hall_check(expansion.line_supports());
            return fail("hall violated: Euler class of the expansion vanishes",
                        std::move(witness));
        }

        PerforationCertificate cert;
        cert.stage = s.index;
        cert.method = "direct";
        cert.exponent = e;
        cert.expansion_rank = expansion.rank();
        cert.base_witness = vil->witness;
        cert.theta_summand_checked = true;
        cert.claim_summary = claim_summary_text(s, e, cert.expansion_rank);
        if (cert.expansion_rank <= kClaimEmbedCap)
            cert.claim = vil->claim;
        CertifyOutcome out;
        out.certificate = std::move(cert);
        return out;
    }

    // Recursive: stage-1 base case plus the per-stage block-size conditions.
    for (std::size_t j = 0; j < chain.size(); ++j) {
        if (chain[j].index != static_cast<std::int64_t>(j) + 1)
            throw std::invalid_argument("certify_perforation: chain must be stages 1..i");
        if (chain[j].materialized() && chain[j].p->trivial_rank() != 1)
            return fail("theta_1 reduction failed at stage " +
                        std::to_string(chain[j].index) +
                        ": p lacks its single trivial summand (report, do not patch)");
    }

    PerforationCertificate cert;
    cert.stage = s.index;
    cert.method = "recursive";
    cert.exponent = e;
    cert.expansion_rank = 2 * s.phi_rank() * ipow(s.d_i, e - 1);
    cert.theta_summand_checked = true;

    VectorBundle base(0);
    try {
        base = perforation_expand(chain.front(), direct_cap, e);
    } catch (const StageNotMaterialized& ex) {
        return fail(std::string("base case unavailable: ") + ex.what());
    } catch (const ExpansionCapExceeded& ex) {
        return fail(std::string("base case unavailable: ") + ex.what());
    }
    bundles::HallResult base_hall = bundles::hall_check(base.line_supports());
    if (!base_hall.ok)
        return fail("base case hall violated at stage 1", std::move(base_hall));
    cert.base_witness = std::move(base_hall);

    for (std::size_t j = 1; j < chain.size(); ++j) {
        const StageState& t = chain[j];
        RecursiveStep step;
        step.stage = t.index;
        step.block_size = t.N_i - t.N_prev;
        step.required = ipow(t.d_i, e);
        step.ok = step.block_size >= step.required;
        cert.steps.push_back(step);
        if (!step.ok)
            return fail("recursive precondition violated at stage " +
                        std::to_string(t.index) + ": N_i - N_{i-1} = " +
                        step.block_size.str() + " < d_i^" + std::to_string(e) +
                        " = " + step.required.str());
    }

    attach_claim(cert, s, e, direct_cap);
    CertifyOutcome out;
    out.certificate = std::move(cert);
    return out;
}

std::vector<RatioEntry> ratio_trace(std::span<const StageState> chain,
                                    std::int64_t k) {
    if (k < 1)
        throw std::invalid_argument("ratio_trace: k must be >= 1");
    std::vector<RatioEntry> out;
    out.reserve(chain.size());
    for (const StageState& s : chain) {
        const Int compact_dim = s.N_i + (s.disc_dim ? *s.disc_dim : Int(0));
        const Int dk = ipow(s.d_i, k);
        RatioEntry entry;
        entry.stage = s.index;
        entry.compact_ratio = Rational(Int(k) * compact_dim, dk);
        entry.real_dim_ratio = Rational(Int(k) * 2 * compact_dim, dk);
        out.push_back(std::move(entry));
    }
    return out;
}

Campaign run_stages(const StageOptions& opt, std::int64_t stage_count) {
    if (stage_count < 1)
        throw std::invalid_argument("run_stages: stage_count must be >= 1");
    Campaign c;
    c.options = opt;
    c.stages.push_back(init_stage(opt));
    for (std::int64_t i = 1; i < stage_count; ++i)
        c.stages.push_back(advance_stage(c.stages.back(), opt));
    return c;
}

}  // namespace villab::construction
