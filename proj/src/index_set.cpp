#include "villab/index_set.hpp"

#include <stdexcept>

namespace villab {

namespace {

// Streams the set bits of a word vector in ascending index order.
struct BitCursor {
    const std::vector<std::uint64_t>* words;
    std::size_t w = 0;
    std::uint64_t cur = 0;

    explicit BitCursor(const std::vector<std::uint64_t>& ws) : words(&ws) {
        cur = ws.empty() ? 0 : ws[0];
    }

    // Next index, or -1 when exhausted.
    std::int64_t next() {
        while (true) {
            if (cur) {
                const int b = std::countr_zero(cur);
                cur &= cur - 1;
                return static_cast<std::int64_t>(w) * 64 + b + 1;
            }
            if (++w >= words->size())
                return -1;
            cur = (*words)[w];
        }
    }
};

}  // namespace

IndexSet IndexSet::single(std::int64_t s) {
    IndexSet r;
    r.insert(s);
    return r;
}

IndexSet IndexSet::of(std::initializer_list<std::int64_t> xs) {
    IndexSet r;
    for (auto s : xs)
        r.insert(s);
    return r;
}

IndexSet IndexSet::from(const std::vector<std::int64_t>& xs) {
    IndexSet r;
    for (auto s : xs)
        r.insert(s);
    return r;
}

IndexSet IndexSet::range(std::int64_t lo, std::int64_t hi) {
    IndexSet r;
    if (lo > hi)
        return r;
    if (lo < 1)
        throw std::invalid_argument("IndexSet::range: indices start at 1");
    const std::size_t w_lo = static_cast<std::size_t>((lo - 1) / 64);
    const std::size_t w_hi = static_cast<std::size_t>((hi - 1) / 64);
    r.words_.assign(w_hi + 1, 0);
    for (std::size_t w = w_lo; w <= w_hi; ++w) {
        std::uint64_t word = ~std::uint64_t{0};
        if (w == w_lo)
            word &= ~std::uint64_t{0} << ((lo - 1) % 64);
        if (w == w_hi) {
            const int top = static_cast<int>((hi - 1) % 64);
            word &= (top == 63) ? ~std::uint64_t{0}
                                : ((std::uint64_t{1} << (top + 1)) - 1);
        }
        r.words_[w] = word;
    }
    return r;
}

void IndexSet::insert(std::int64_t s) {
    if (s < 1)
        throw std::invalid_argument("IndexSet::insert: indices start at 1");
    const std::size_t w = static_cast<std::size_t>((s - 1) / 64);
    if (w >= words_.size())
        words_.resize(w + 1, 0);
    words_[w] |= std::uint64_t{1} << ((s - 1) % 64);
}

bool IndexSet::contains(std::int64_t s) const {
    if (s < 1)
        return false;
    const std::size_t w = static_cast<std::size_t>((s - 1) / 64);
    if (w >= words_.size())
        return false;
    return (words_[w] >> ((s - 1) % 64)) & 1;
}

std::size_t IndexSet::size() const {
    std::size_t n = 0;
    for (auto w : words_)
        n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

std::int64_t IndexSet::max_index() const {
    if (words_.empty())
        return 0;
    const std::size_t w = words_.size() - 1;
    const int b = 63 - std::countl_zero(words_[w]);
    return static_cast<std::int64_t>(w) * 64 + b + 1;
}

bool IndexSet::intersects(const IndexSet& o) const {
    const std::size_t n = std::min(words_.size(), o.words_.size());
    for (std::size_t w = 0; w < n; ++w)
        if (words_[w] & o.words_[w])
            return true;
    return false;
}

bool IndexSet::is_subset_of(const IndexSet& o) const {
    if (words_.size() > o.words_.size())
        return false;
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w] & ~o.words_[w])
            return false;
    return true;
}

IndexSet IndexSet::union_with(const IndexSet& o) const {
    IndexSet r;
    r.words_.resize(std::max(words_.size(), o.words_.size()), 0);
    for (std::size_t w = 0; w < words_.size(); ++w)
        r.words_[w] |= words_[w];
    for (std::size_t w = 0; w < o.words_.size(); ++w)
        r.words_[w] |= o.words_[w];
    return r;  // no trim needed: union of trimmed sets has a set top word
}

std::vector<std::int64_t> IndexSet::indices() const {
    std::vector<std::int64_t> out;
    out.reserve(size());
    for_each([&out](std::int64_t s) { out.push_back(s); });
    return out;
}

int IndexSet::compare_lex(const IndexSet& a, const IndexSet& b) {
    BitCursor ca(a.words_), cb(b.words_);
    while (true) {
        const std::int64_t xa = ca.next();
        const std::int64_t xb = cb.next();
        if (xa == -1 && xb == -1)
            return 0;
        if (xa == -1)
            return -1;
        if (xb == -1)
            return 1;
        if (xa != xb)
            return xa < xb ? -1 : 1;
    }
}

std::string IndexSet::to_string() const {
    std::string out = "{";
    bool first = true;
    for_each([&](std::int64_t s) {
        if (!first)
            out += ",";
        out += std::to_string(s);
        first = false;
    });
    out += "}";
    return out;
}

}  // namespace villab
