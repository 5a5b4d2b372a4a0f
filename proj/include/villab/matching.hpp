#pragma once

#include <cstddef>
#include <vector>

namespace villab {

struct MaxMatching {
    std::vector<int> left_to_right;  // -1 when unmatched
    std::vector<int> right_to_left;
    std::size_t size = 0;
};

// Maximum bipartite matching via Hopcroft-Karp.  adj[u] lists the right
// vertices of left vertex u; vertices are 0-based.  Deterministic for a fixed
// adjacency order.
MaxMatching hopcroft_karp(std::size_t n_left, std::size_t n_right,
                          const std::vector<std::vector<int>>& adj);

}  // namespace villab
