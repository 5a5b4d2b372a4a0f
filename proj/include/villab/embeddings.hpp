#pragma once

#include "villab/ints.hpp"

#include <optional>
#include <vector>

namespace villab::embeddings {

struct Pair {
    Int a, b;
    bool operator==(const Pair&) const = default;
};

// Largest integer not representable as ap + bq with a, b >= 0, for coprime
// p, q >= 2: pq - p - q.
Int frobenius(const Int& p, const Int& q);

// Lexicographically least nonnegative (a, b) with ap + bq = M, or nullopt.
// p, q >= 1; M >= 0.
std::optional<Pair> represent(const Int& M, const Int& p, const Int& q);

// Least rank admitting a witness: ceil(dim_x/2) * (2N + 1).
Int homembed_min_rank(const Int& N, const Int& dim_x);

// Nonnegative (a, b) with aN + b(N+1) = rank_p and a, b >= ceil(dim_x/2),
// least a; nullopt when impossible.  dim_x is a real dimension; the halved
// threshold rounds up so the positivity rule stays valid for odd dimensions.
std::optional<Pair> homembed_witness(const Int& rank_p, const Int& dim_x,
                                     const Int& N);

struct ScheduleEntry {
    Int size;  // k_j
    Int a, b;  // a p + b q = k_j
};

// Per-summand coefficient pairs for matrix sizes k_j; every k_j must be
// representable over p, q (coprime, >= 2).  Note the threshold is strict:
// k_j = pq - p - q itself is not representable.
std::vector<ScheduleEntry> dimdrop_schedule(const Int& p, const Int& q,
                                            const std::vector<Int>& sizes);

// Least k with k * max_dim / min_rank^k < epsilon; the ratio is
// non-increasing for min_rank >= 2, so the first hit is final.
std::int64_t lochom_exponent(const Int& max_dim, const Int& min_rank,
                             const Rational& epsilon);

}  // namespace villab::embeddings
