#include "villab/cohomology.hpp"

#include <stdexcept>

namespace villab::cohomology {

namespace {

void require_same_ambient(const CohomologyClass& a, const CohomologyClass& b,
                          const char* op) {
    if (a.ambient() != b.ambient())
        throw std::invalid_argument(std::string(op) + ": ambient mismatch (" +
                                    std::to_string(a.ambient()) + " vs " +
                                    std::to_string(b.ambient()) + ")");
}

}  // namespace

CohomologyClass::CohomologyClass(std::int64_t ambient) : ambient_(ambient) {
    if (ambient < 0)
        throw std::invalid_argument("CohomologyClass: ambient must be >= 0");
}

CohomologyClass CohomologyClass::unit(std::int64_t m) {
    CohomologyClass c(m);
    c.add_term(IndexSet{}, 1);
    return c;
}

CohomologyClass CohomologyClass::monomial(std::int64_t m, const IndexSet& subset,
                                          const Int& coeff) {
    CohomologyClass c(m);
    c.add_term(subset, coeff);
    return c;
}

CohomologyClass CohomologyClass::generator(std::int64_t m, std::int64_t s) {
    if (s < 1 || s > m)
        throw std::invalid_argument("generator: index out of range");
    return monomial(m, IndexSet::single(s), 1);
}

Int CohomologyClass::coefficient(const IndexSet& subset) const {
    auto it = terms_.find(subset);
    return it == terms_.end() ? Int(0) : it->second;
}

CohomologyClass& CohomologyClass::add_term(const IndexSet& subset, const Int& coeff) {
    if (coeff == 0)
        return *this;
    if (subset.max_index() > ambient_)
        throw std::invalid_argument("add_term: subset exceeds ambient " +
                                    std::to_string(ambient_));
    auto [it, inserted] = terms_.try_emplace(subset, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0)
            terms_.erase(it);
    }
    return *this;
}

CohomologyClass add(const CohomologyClass& a, const CohomologyClass& b) {
    require_same_ambient(a, b, "add");
    CohomologyClass out = a;
    for (const auto& [subset, coeff] : b.terms())
        out.add_term(subset, coeff);
    return out;
}

CohomologyClass negate(const CohomologyClass& a) {
    return scale(a, -1);
}

CohomologyClass subtract(const CohomologyClass& a, const CohomologyClass& b) {
    return add(a, negate(b));
}

CohomologyClass scale(const CohomologyClass& a, const Int& c) {
    CohomologyClass out(a.ambient());
    if (c == 0)
        return out;
    for (const auto& [subset, coeff] : a.terms())
        out.add_term(subset, coeff * c);
    return out;
}

CohomologyClass cup(const CohomologyClass& a, const CohomologyClass& b) {
    require_same_ambient(a, b, "cup");
    CohomologyClass out(a.ambient());
    for (const auto& [sa, ca] : a.terms()) {
        for (const auto& [sb, cb] : b.terms()) {
            if (sa.intersects(sb))
                continue;  // repeated generator, killed by x_s^2 = 0
            out.add_term(sa.union_with(sb), ca * cb);
        }
    }
    return out;
}

CohomologyClass top_term(const CohomologyClass& a, std::int64_t k) {
    CohomologyClass out(a.ambient());
    if (k < 0)
        return out;
    for (const auto& [subset, coeff] : a.terms())
        if (static_cast<std::int64_t>(subset.size()) == k)
            out.add_term(subset, coeff);
    return out;
}

std::int64_t top_degree(const CohomologyClass& a) {
    std::int64_t best = -1;
    for (const auto& [subset, coeff] : a.terms()) {
        (void)coeff;
        best = std::max(best, static_cast<std::int64_t>(subset.size()));
    }
    return best;
}

Int coefficient_sum(const CohomologyClass& a, std::int64_t k) {
    Int sum = 0;
    for (const auto& [subset, coeff] : a.terms())
        if (static_cast<std::int64_t>(subset.size()) == k)
            sum += coeff;
    return sum;
}

}  // namespace villab::cohomology
