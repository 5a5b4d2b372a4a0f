#include "villab/embeddings.hpp"

#include <stdexcept>

namespace villab::embeddings {

namespace {

Int gcd(Int a, Int b) {
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// x with x * a == 1 (mod m), for gcd(a, m) = 1, m >= 1.
Int mod_inverse(const Int& a, const Int& m) {
    Int old_r = a % m, r = m;
    Int old_s = 1, s = 0;
    while (r != 0) {
        const Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    Int inv = old_s % m;
    if (inv < 0)
        inv += m;
    return inv;
}

}  // namespace

Int frobenius(const Int& p, const Int& q) {
    if (p < 2 || q < 2)
        throw std::invalid_argument("frobenius: generators must be >= 2");
    if (gcd(p, q) != 1)
        throw std::invalid_argument("frobenius: generators must be coprime");
    return p * q - p - q;
}

std::optional<Pair> represent(const Int& M, const Int& p, const Int& q) {
    if (p < 1 || q < 1)
        throw std::invalid_argument("represent: generators must be >= 1");
    if (M < 0)
        throw std::invalid_argument("represent: target must be >= 0");

    const Int g = gcd(p, q);
    if (M % g != 0)
        return std::nullopt;
    const Int pp = p / g, qq = q / g, mm = M / g;

    // Least a >= 0 with a * pp == mm (mod qq); then b is forced.
    Int a;
    if (qq == 1) {
        a = 0;
    } else {
        a = (mm % qq) * mod_inverse(pp % qq, qq) % qq;
    }
    if (a * pp > mm)
        return std::nullopt;
    return Pair{a, (mm - a * pp) / qq};
}

Int homembed_min_rank(const Int& N, const Int& dim_x) {
    if (N < 1)
        throw std::invalid_argument("homembed_min_rank: N must be >= 1");
    if (dim_x < 0)
        throw std::invalid_argument("homembed_min_rank: dimension must be >= 0");
    const Int t = ceil_div(dim_x, 2);
    return t * (2 * N + 1);
}

std::optional<Pair> homembed_witness(const Int& rank_p, const Int& dim_x,
                                     const Int& N) {
    if (N < 1)
        throw std::invalid_argument("homembed_witness: N must be >= 1");
    if (dim_x < 0)
        throw std::invalid_argument("homembed_witness: dimension must be >= 0");
    if (rank_p < 0)
        return std::nullopt;

    const Int t = ceil_div(dim_x, 2);
    const Int residual = rank_p - t * (2 * N + 1);
    if (residual < 0)
        return std::nullopt;
    const auto base = represent(residual, N, N + 1);
    if (!base)
        return std::nullopt;
    return Pair{base->a + t, base->b + t};
}

std::vector<ScheduleEntry> dimdrop_schedule(const Int& p, const Int& q,
                                            const std::vector<Int>& sizes) {
    if (p < 2 || q < 2)
        throw std::invalid_argument("dimdrop_schedule: generators must be >= 2");
    if (gcd(p, q) != 1)
        throw std::invalid_argument("dimdrop_schedule: generators must be coprime");

    std::vector<ScheduleEntry> out;
    out.reserve(sizes.size());
    for (std::size_t j = 0; j < sizes.size(); ++j) {
        const Int& k = sizes[j];
        if (k < 1)
            throw std::invalid_argument("dimdrop_schedule: sizes must be >= 1");
        const auto rep = represent(k, p, q);
        if (!rep)
            throw std::invalid_argument(
                "dimdrop_schedule: summand " + std::to_string(j + 1) + " of size " +
                k.str() + " is not representable over (" + p.str() + ", " + q.str() +
                ")");
        out.push_back(ScheduleEntry{k, rep->a, rep->b});
    }
    return out;
}

std::int64_t lochom_exponent(const Int& max_dim, const Int& min_rank,
                             const Rational& epsilon) {
    if (min_rank < 2)
        throw std::invalid_argument("lochom_exponent: min_rank must be >= 2");
    if (max_dim < 0)
        throw std::invalid_argument("lochom_exponent: max_dim must be >= 0");
    if (epsilon <= 0)
        throw std::invalid_argument("lochom_exponent: epsilon must be positive");

    for (std::int64_t k = 1;; ++k) {
        if (Rational(Int(k) * max_dim, ipow(min_rank, k)) < epsilon)
            return k;
        if (k > 4000000)
            throw std::logic_error("lochom_exponent: search bound runaway");
    }
}

}  // namespace villab::embeddings
