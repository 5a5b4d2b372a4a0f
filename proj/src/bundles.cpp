#include "villab/bundles.hpp"

#include "villab/matching.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace villab::bundles {

namespace {

void require_same_ambient(std::int64_t a, std::int64_t b, const char* op) {
    if (a != b)
        throw std::invalid_argument(std::string(op) + ": ambient mismatch (" +
                                    std::to_string(a) + " vs " + std::to_string(b) +
                                    ")");
}

}  // namespace

// ---------------------------------------------------------------------------
// LineBundle

LineBundle::LineBundle(std::int64_t ambient,
                       std::map<std::int64_t, std::int64_t> indices)
    : ambient_(ambient), indices_(std::move(indices)) {
    if (indices_.empty())
        throw std::invalid_argument(
            "LineBundle: empty support (trivial lines belong to trivial_rank)");
    for (const auto& [s, mult] : indices_) {
        if (s < 1 || s > ambient_)
            throw std::invalid_argument("LineBundle: coordinate " +
                                        std::to_string(s) + " outside {1.." +
                                        std::to_string(ambient_) + "}");
        if (mult < 1)
            throw std::invalid_argument("LineBundle: multiplicities must be >= 1");
    }
}

LineBundle LineBundle::xi(std::int64_t ambient, const IndexSet& support) {
    std::map<std::int64_t, std::int64_t> idx;
    support.for_each([&idx](std::int64_t s) { idx[s] = 1; });
    return LineBundle(ambient, std::move(idx));
}

IndexSet LineBundle::support() const {
    IndexSet s;
    for (const auto& [coord, mult] : indices_) {
        (void)mult;
        s.insert(coord);
    }
    return s;
}

CohomologyClass LineBundle::first_chern() const {
    CohomologyClass c(ambient_);
    for (const auto& [coord, mult] : indices_)
        c.add_term(IndexSet::single(coord), mult);
    return c;
}

LineBundle LineBundle::tensor(const LineBundle& o) const {
    require_same_ambient(ambient_, o.ambient_, "LineBundle::tensor");
    std::map<std::int64_t, std::int64_t> idx = indices_;
    for (const auto& [coord, mult] : o.indices_)
        idx[coord] += mult;
    return LineBundle(ambient_, std::move(idx));
}

// ---------------------------------------------------------------------------
// VectorBundle

VectorBundle::VectorBundle(std::int64_t ambient)
    : ambient_(ambient), trivial_rank_(0) {
    if (ambient < 0)
        throw std::invalid_argument("VectorBundle: ambient must be >= 0");
}

VectorBundle VectorBundle::trivial(std::int64_t ambient, const Int& rank) {
    VectorBundle v(ambient);
    v.add_trivial(rank);
    return v;
}

VectorBundle VectorBundle::from_line(const LineBundle& line, const Int& count) {
    VectorBundle v(line.ambient());
    v.add_line(line, count);
    return v;
}

Int VectorBundle::rank() const {
    return trivial_rank_ + line_count();
}

Int VectorBundle::line_count() const {
    Int n = 0;
    for (const auto& [line, count] : lines_) {
        (void)line;
        n += count;
    }
    return n;
}

void VectorBundle::add_trivial(const Int& n) {
    if (n < 0)
        throw std::invalid_argument("VectorBundle: negative trivial rank");
    trivial_rank_ += n;
}

void VectorBundle::add_line(const LineBundle& line, const Int& count) {
    if (count < 0)
        throw std::invalid_argument("VectorBundle: negative line count");
    if (count == 0)
        return;
    require_same_ambient(ambient_, line.ambient(), "VectorBundle::add_line");
    lines_[line] += count;
}

void VectorBundle::add_bundle(const VectorBundle& o) {
    require_same_ambient(ambient_, o.ambient_, "VectorBundle::add_bundle");
    trivial_rank_ += o.trivial_rank_;
    for (const auto& [line, count] : o.lines_)
        lines_[line] += count;
}

std::vector<IndexSet> VectorBundle::line_supports() const {
    std::vector<IndexSet> out;
    for (const auto& [line, count] : lines_) {
        const std::int64_t c = to_int64(count);
        const IndexSet s = line.support();
        for (std::int64_t i = 0; i < c; ++i)
            out.push_back(s);
    }
    return out;
}

VectorBundle whitney_sum(const VectorBundle& a, const VectorBundle& b) {
    VectorBundle out = a;
    out.add_bundle(b);
    return out;
}

VectorBundle tensor(const VectorBundle& a, const VectorBundle& b) {
    require_same_ambient(a.ambient(), b.ambient(), "tensor");
    VectorBundle out(a.ambient());
    out.add_trivial(a.trivial_rank() * b.trivial_rank());
    if (b.trivial_rank() > 0)
        for (const auto& [line, count] : a.lines())
            out.add_line(line, count * b.trivial_rank());
    if (a.trivial_rank() > 0)
        for (const auto& [line, count] : b.lines())
            out.add_line(line, count * a.trivial_rank());
    for (const auto& [la, ca] : a.lines())
        for (const auto& [lb, cb] : b.lines())
            out.add_line(la.tensor(lb), ca * cb);
    return out;
}

VectorBundle external_tensor(const VectorBundle& a, const VectorBundle& b) {
    const std::int64_t m = a.ambient() + b.ambient();
    const VectorBundle a_ext = pullback(a, Reindexing::shift(0, m));
    const VectorBundle b_ext = pullback(b, Reindexing::shift(a.ambient(), m));
    return tensor(a_ext, b_ext);
}

// ---------------------------------------------------------------------------
// Reindexing / pullback

Reindexing Reindexing::shift(std::int64_t offset, std::int64_t new_ambient) {
    Reindexing r;
    r.new_ambient_ = new_ambient;
    r.offset_ = offset;
    return r;
}

Reindexing Reindexing::of_map(std::map<std::int64_t, std::int64_t> map,
                              std::int64_t new_ambient) {
    Reindexing r;
    r.new_ambient_ = new_ambient;
    r.use_map_ = true;
    std::set<std::int64_t> seen;
    for (const auto& [from, to] : map) {
        (void)from;
        if (!seen.insert(to).second)
            throw std::invalid_argument("Reindexing: map is not injective");
    }
    r.map_ = std::move(map);
    return r;
}

std::int64_t Reindexing::apply(std::int64_t s) const {
    std::int64_t t;
    if (use_map_) {
        auto it = map_.find(s);
        if (it == map_.end())
            throw std::invalid_argument("Reindexing: coordinate " +
                                        std::to_string(s) + " not in map");
        t = it->second;
    } else {
        t = s + offset_;
    }
    if (t < 1 || t > new_ambient_)
        throw std::invalid_argument("Reindexing: image " + std::to_string(t) +
                                    " outside {1.." + std::to_string(new_ambient_) +
                                    "}");
    return t;
}

LineBundle pullback(const LineBundle& line, const Reindexing& rho) {
    std::map<std::int64_t, std::int64_t> idx;
    for (const auto& [coord, mult] : line.indices())
        idx[rho.apply(coord)] = mult;
    return LineBundle(rho.new_ambient(), std::move(idx));
}

VectorBundle pullback(const VectorBundle& v, const Reindexing& rho) {
    VectorBundle out(rho.new_ambient());
    out.add_trivial(v.trivial_rank());
    for (const auto& [line, count] : v.lines())
        out.add_line(pullback(line, rho), count);
    return out;
}

// ---------------------------------------------------------------------------
// Hall condition

HallResult hall_check(const std::vector<IndexSet>& supports) {
    for (const IndexSet& s : supports)
        if (s.empty())
            throw std::invalid_argument("hall_check: empty support rejected");

    const std::size_t k = supports.size();
    HallResult out;

    // Summands whose support has >= k coordinates can never block: match the
    // rest exactly, then extend greedily.
    std::vector<std::size_t> small, big;
    for (std::size_t j = 0; j < k; ++j) {
        if (supports[j].size() < k)
            small.push_back(j);
        else
            big.push_back(j);
    }

    std::map<std::int64_t, int> coord_id;
    std::vector<std::int64_t> coord_of;
    std::vector<std::vector<int>> adj(small.size());
    for (std::size_t u = 0; u < small.size(); ++u) {
        supports[small[u]].for_each([&](std::int64_t c) {
            auto [it, inserted] = coord_id.try_emplace(
                c, static_cast<int>(coord_of.size()));
            if (inserted)
                coord_of.push_back(c);
            adj[u].push_back(it->second);
        });
    }

    const MaxMatching mm = hopcroft_karp(small.size(), coord_of.size(), adj);

    if (mm.size < small.size()) {
        // Alternating reachability from the unmatched summands yields a Hall
        // violator: every reachable coordinate is matched back into the set.
        std::vector<char> vis_l(small.size(), 0), vis_r(coord_of.size(), 0);
        std::vector<std::size_t> stack;
        for (std::size_t u = 0; u < small.size(); ++u) {
            if (mm.left_to_right[u] == -1) {
                vis_l[u] = 1;
                stack.push_back(u);
            }
        }
        while (!stack.empty()) {
            const std::size_t u = stack.back();
            stack.pop_back();
            for (int v : adj[u]) {
                if (vis_r[v])
                    continue;
                vis_r[v] = 1;
                const int w = mm.right_to_left[v];
                if (w != -1 && !vis_l[w]) {
                    vis_l[w] = 1;
                    stack.push_back(static_cast<std::size_t>(w));
                }
            }
        }
        for (std::size_t u = 0; u < small.size(); ++u) {
            if (vis_l[u]) {
                out.violating_family.push_back(small[u]);
                out.violating_union =
                    out.violating_union.union_with(supports[small[u]]);
            }
        }
        out.ok = false;
        return out;
    }

    std::set<std::int64_t> used;
    out.matching.assign(k, 0);
    for (std::size_t u = 0; u < small.size(); ++u) {
        const std::int64_t c = coord_of[static_cast<std::size_t>(mm.left_to_right[u])];
        out.matching[small[u]] = c;
        used.insert(c);
    }
    for (std::size_t j : big) {
        bool placed = false;
        const auto coords = supports[j].indices();
        for (std::int64_t c : coords) {
            if (used.insert(c).second) {
                out.matching[j] = c;
                placed = true;
                break;
            }
        }
        if (!placed)
            throw std::logic_error("hall_check: greedy extension failed");
    }
    out.ok = true;
    return out;
}

// ---------------------------------------------------------------------------
// Characteristic classes

CohomologyClass euler_class(const VectorBundle& v) {
    if (v.trivial_rank() > 0)
        return CohomologyClass::zero(v.ambient());
    if (v.line_count() > v.ambient())
        return CohomologyClass::zero(v.ambient());  // degree above the top
    CohomologyClass acc = CohomologyClass::unit(v.ambient());
    for (const auto& [line, count] : v.lines()) {
        const CohomologyClass factor = line.first_chern();
        const std::int64_t c = to_int64(count);
        for (std::int64_t i = 0; i < c && !acc.is_zero(); ++i)
            acc = cohomology::cup(acc, factor);
    }
    return acc;
}

CohomologyClass chern_class(const VectorBundle& v) {
    CohomologyClass acc = CohomologyClass::unit(v.ambient());
    for (const auto& [line, count] : v.lines()) {
        const CohomologyClass factor =
            cohomology::add(CohomologyClass::unit(v.ambient()), line.first_chern());
        const std::int64_t c = to_int64(count);
        for (std::int64_t i = 0; i < c; ++i)
            acc = cohomology::cup(acc, factor);
    }
    return acc;
}

bool euler_nonzero(const VectorBundle& v) {
    if (v.trivial_rank() > 0)
        return false;
    if (v.line_count() > v.ambient())
        return false;  // pigeonhole: more summands than coordinates
    return hall_check(v.line_supports()).ok;
}

// ---------------------------------------------------------------------------
// KClass

KClass::KClass(std::int64_t ambient) : ambient_(ambient), trivial_part_(0) {
    if (ambient < 0)
        throw std::invalid_argument("KClass: ambient must be >= 0");
}

KClass KClass::difference(const VectorBundle& plus, const VectorBundle& minus) {
    require_same_ambient(plus.ambient(), minus.ambient(), "KClass::difference");
    KClass x(plus.ambient());
    x.add_trivial(plus.trivial_rank() - minus.trivial_rank());
    for (const auto& [line, count] : plus.lines())
        x.add_line(line, count);
    for (const auto& [line, count] : minus.lines())
        x.add_line(line, -count);
    return x;
}

Int KClass::virtual_rank() const {
    Int r = trivial_part_;
    for (const auto& [line, mult] : lines_) {
        (void)line;
        r += mult;
    }
    return r;
}

bool KClass::all_line_multiplicities_nonnegative() const {
    for (const auto& [line, mult] : lines_) {
        (void)line;
        if (mult < 0)
            return false;
    }
    return true;
}

void KClass::add_trivial(const Int& n) {
    trivial_part_ += n;
}

void KClass::add_line(const LineBundle& line, const Int& mult) {
    if (mult == 0)
        return;
    require_same_ambient(ambient_, line.ambient(), "KClass::add_line");
    auto [it, inserted] = lines_.try_emplace(line, mult);
    if (!inserted) {
        it->second += mult;
        if (it->second == 0)
            lines_.erase(it);
    }
}

bool certified_positive(const KClass& x, const Int& real_dim) {
    if (real_dim < 0)
        throw std::invalid_argument("certified_positive: negative dimension");
    if (!x.all_line_multiplicities_nonnegative())
        return false;  // not of the form (honest bundle) - (trivial bundle)
    const Int threshold = ceil_div(real_dim, 2);
    return x.virtual_rank() >= threshold;
}

// ---------------------------------------------------------------------------
// Perforation obstruction

std::optional<VilCertificate> vil_obstruction(const std::vector<LineBundle>& lines,
                                              const Int& l) {
    if (lines.empty())
        return std::nullopt;
    const std::int64_t ambient = lines.front().ambient();
    VectorBundle sum(ambient);
    for (const LineBundle& line : lines)
        sum.add_line(line, 1);

    const Int k = sum.rank();
    if (l < 0 || !(l < k))
        return std::nullopt;
    if (sum.line_count() > sum.ambient())
        return std::nullopt;  // Euler class vanishes by pigeonhole

    HallResult witness = hall_check(sum.line_supports());
    if (!witness.ok)
        return std::nullopt;

    KClass claim = KClass::difference(
        sum, VectorBundle::trivial(ambient, l));
    return VilCertificate(std::move(claim), k, l, std::move(witness));
}

}  // namespace villab::bundles
