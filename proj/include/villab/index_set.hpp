#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace villab {

// Finite set of positive coordinate indices, bit-packed: index s occupies bit
// (s-1) % 64 of word (s-1) / 64.  Trailing zero words are trimmed so equality
// is plain vector equality.  Works for any ambient size; word operations are
// the fast path for the usual m <= 64 case.
class IndexSet {
public:
    IndexSet() = default;

    static IndexSet single(std::int64_t s);
    static IndexSet of(std::initializer_list<std::int64_t> xs);
    static IndexSet from(const std::vector<std::int64_t>& xs);
    // Inclusive range {lo..hi}; empty when lo > hi.
    static IndexSet range(std::int64_t lo, std::int64_t hi);

    void insert(std::int64_t s);
    bool contains(std::int64_t s) const;
    bool empty() const { return words_.empty(); }
    std::size_t size() const;
    std::int64_t max_index() const;  // 0 when empty
    bool intersects(const IndexSet& o) const;
    bool is_subset_of(const IndexSet& o) const;
    IndexSet union_with(const IndexSet& o) const;
    std::vector<std::int64_t> indices() const;

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t word = words_[w];
            while (word) {
                const int b = std::countr_zero(word);
                f(static_cast<std::int64_t>(w) * 64 + b + 1);
                word &= word - 1;
            }
        }
    }

    bool operator==(const IndexSet&) const = default;

    // Order as ascending index sequences; a proper prefix sorts first.
    static int compare_lex(const IndexSet& a, const IndexSet& b);

    std::string to_string() const;  // "{1,2,5}"

private:
    std::vector<std::uint64_t> words_;
};

struct IndexSetLexLess {
    bool operator()(const IndexSet& a, const IndexSet& b) const {
        return IndexSet::compare_lex(a, b) < 0;
    }
};

}  // namespace villab
