#pragma once

#include "villab/index_set.hpp"
#include "villab/ints.hpp"

#include <cstdint>
#include <map>

namespace villab::cohomology {

// Element of the subring of H*((S^2)^m; Z) generated by the degree-2 classes
// x_1,...,x_m subject to x_s^2 = 0.  Stored as a map from square-free
// monomials (index subsets of {1..m}) to nonzero integer coefficients; the
// degree of a term is 2 * |subset|.
//
// Values are immutable after construction apart from add_term, which is the
// single mutation used by the builders below; every exported operation is
// pure and safe to call concurrently.
class CohomologyClass {
public:
    using TermMap = std::map<IndexSet, Int, IndexSetLexLess>;

    explicit CohomologyClass(std::int64_t ambient);

    static CohomologyClass zero(std::int64_t m) { return CohomologyClass(m); }
    static CohomologyClass unit(std::int64_t m);
    static CohomologyClass monomial(std::int64_t m, const IndexSet& subset,
                                    const Int& coeff = 1);
    static CohomologyClass generator(std::int64_t m, std::int64_t s);  // x_s

    std::int64_t ambient() const { return ambient_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Int coefficient(const IndexSet& subset) const;

    // coeff * x_subset added in place; zero results are dropped.
    CohomologyClass& add_term(const IndexSet& subset, const Int& coeff);

    bool operator==(const CohomologyClass&) const = default;

private:
    std::int64_t ambient_;
    TermMap terms_;
};

CohomologyClass add(const CohomologyClass& a, const CohomologyClass& b);
CohomologyClass negate(const CohomologyClass& a);
CohomologyClass subtract(const CohomologyClass& a, const CohomologyClass& b);
CohomologyClass scale(const CohomologyClass& a, const Int& c);

// Cup product: bilinear extension of monomial(S) * monomial(T) =
// monomial(S u T) when S and T are disjoint, 0 otherwise.  Commutative since
// every generator sits in even degree.
CohomologyClass cup(const CohomologyClass& a, const CohomologyClass& b);

inline bool is_zero(const CohomologyClass& a) { return a.is_zero(); }

// The H^{2k} component: terms whose subset has exactly k elements.
CohomologyClass top_term(const CohomologyClass& a, std::int64_t k);

// Largest k with a nonzero H^{2k} component; -1 for the zero class.
std::int64_t top_degree(const CohomologyClass& a);

// Sum of the coefficients in the H^{2k} component.  For products of linear
// forms with nonnegative coefficients this counts systems of distinct
// representatives.
Int coefficient_sum(const CohomologyClass& a, std::int64_t k);

}  // namespace villab::cohomology
