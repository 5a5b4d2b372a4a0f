#pragma once

#include "villab/cohomology.hpp"
#include "villab/index_set.hpp"
#include "villab/ints.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace villab::bundles {

using cohomology::CohomologyClass;

// Tensor product of pulled-back Hopf line bundles over (S^2)^m, recorded as a
// coordinate -> multiplicity map.  xi_I is the multiplicity-one case;
// multiplicities > 1 arise from closure under tensor products.  The support
// must be nonempty: the trivial line lives in VectorBundle::trivial_rank.
class LineBundle {
public:
    LineBundle(std::int64_t ambient, std::map<std::int64_t, std::int64_t> indices);

    // xi_I: multiplicity one on every coordinate of the support.
    static LineBundle xi(std::int64_t ambient, const IndexSet& support);

    std::int64_t ambient() const { return ambient_; }
    const std::map<std::int64_t, std::int64_t>& indices() const { return indices_; }
    IndexSet support() const;

    // c_1 = sum_s mult(s) * x_s; equals the Euler class of the line bundle.
    CohomologyClass first_chern() const;

    LineBundle tensor(const LineBundle& o) const;

    bool operator==(const LineBundle&) const = default;
    bool operator<(const LineBundle& o) const {
        if (ambient_ != o.ambient_)
            return ambient_ < o.ambient_;
        return indices_ < o.indices_;
    }

private:
    std::int64_t ambient_;
    std::map<std::int64_t, std::int64_t> indices_;
};

// Whitney sum of a trivial bundle theta_t and a multiset of line bundles.
class VectorBundle {
public:
    explicit VectorBundle(std::int64_t ambient);

    static VectorBundle trivial(std::int64_t ambient, const Int& rank);
    static VectorBundle from_line(const LineBundle& line, const Int& count = 1);

    std::int64_t ambient() const { return ambient_; }
    const Int& trivial_rank() const { return trivial_rank_; }
    const std::map<LineBundle, Int>& lines() const { return lines_; }

    Int rank() const;
    Int line_count() const;  // number of line summands, counted with multiplicity

    void add_trivial(const Int& n);
    void add_line(const LineBundle& line, const Int& count = 1);
    void add_bundle(const VectorBundle& o);  // Whitney sum in place

    // Supports of the line summands, one entry per copy.  Guarded by the
    // caller: counts must be of materialisable size.
    std::vector<IndexSet> line_supports() const;

    bool operator==(const VectorBundle&) const = default;

private:
    std::int64_t ambient_;
    Int trivial_rank_;
    std::map<LineBundle, Int> lines_;
};

VectorBundle whitney_sum(const VectorBundle& a, const VectorBundle& b);

// Internal (fibre-wise) tensor product; distributes over Whitney sums, the
// trivial line acts as unit.
VectorBundle tensor(const VectorBundle& a, const VectorBundle& b);

// External tensor product: b's coordinates are shifted past a's, the result
// lives over (S^2)^(m_a + m_b).
VectorBundle external_tensor(const VectorBundle& a, const VectorBundle& b);

// Injective coordinate relabeling into a (possibly larger) ambient.
class Reindexing {
public:
    static Reindexing shift(std::int64_t offset, std::int64_t new_ambient);
    static Reindexing of_map(std::map<std::int64_t, std::int64_t> map,
                             std::int64_t new_ambient);

    std::int64_t new_ambient() const { return new_ambient_; }
    std::int64_t apply(std::int64_t s) const;

private:
    Reindexing() = default;
    std::int64_t new_ambient_ = 0;
    std::int64_t offset_ = 0;
    bool use_map_ = false;
    std::map<std::int64_t, std::int64_t> map_;
};

VectorBundle pullback(const VectorBundle& v, const Reindexing& rho);
LineBundle pullback(const LineBundle& line, const Reindexing& rho);

// Hall-condition certificate for a family of index supports: either a system
// of distinct representatives (matching[j] = coordinate of summand j) or a
// violating family F with |union of its supports| < |F|, reconstructed from
// the alternating-reachability cut of a maximum matching.
struct HallResult {
    bool ok = false;
    std::vector<std::int64_t> matching;
    std::vector<std::size_t> violating_family;
    IndexSet violating_union;
};

// Throws std::invalid_argument when some support is empty.
HallResult hall_check(const std::vector<IndexSet>& supports);

// e(v): zero when a trivial summand is present, otherwise the cup product of
// the line summands' first Chern classes.
CohomologyClass euler_class(const VectorBundle& v);

// c(v): product of (1 + c_1) over line summands; trivial summands contribute 1.
CohomologyClass chern_class(const VectorBundle& v);

// Whether e(v) != 0, decided by the Hall condition on the line supports (no
// symbolic expansion).  Valid with multiplicities > 1 because every expansion
// coefficient is nonnegative and the top coefficient is a positive sum over
// systems of distinct representatives.
bool euler_nonzero(const VectorBundle& v);

// Formal difference of bundle classes in K^0((S^2)^m), kept in canonical form
// (no zero multiplicities).
class KClass {
public:
    explicit KClass(std::int64_t ambient);

    static KClass difference(const VectorBundle& plus, const VectorBundle& minus);

    std::int64_t ambient() const { return ambient_; }
    const Int& trivial_part() const { return trivial_part_; }
    const std::map<LineBundle, Int>& lines() const { return lines_; }

    Int virtual_rank() const;
    bool all_line_multiplicities_nonnegative() const;

    void add_trivial(const Int& n);
    void add_line(const LineBundle& line, const Int& mult);

    bool operator==(const KClass&) const = default;

private:
    std::int64_t ambient_;
    Int trivial_part_;
    std::map<LineBundle, Int> lines_;
};

// One-sided positivity certificate: true when x is presented as an honest
// bundle minus a trivial bundle (every line multiplicity >= 0) and its
// virtual rank clears ceil(real_dim / 2).  False means "not certified",
// never "not positive".
bool certified_positive(const KClass& x, const Int& real_dim);

// Certificate that [eta_1 + ... + eta_k] - [theta_l] is not a positive class:
// requires l < k and a nonvanishing Euler class, witnessed by a matching.
struct VilCertificate {
    KClass claim;
    Int summand_count;  // k
    Int trivial_rank;   // l
    HallResult witness;

    VilCertificate(KClass c, Int k, Int l, HallResult w)
        : claim(std::move(c)),
          summand_count(std::move(k)),
          trivial_rank(std::move(l)),
          witness(std::move(w)) {}
};

// Returns a certificate when l < k and e(+lines) != 0; otherwise nullopt (no
// claim either way).
std::optional<VilCertificate> vil_obstruction(const std::vector<LineBundle>& lines,
                                              const Int& l);

}  // namespace villab::bundles
