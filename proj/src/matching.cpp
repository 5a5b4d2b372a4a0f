#include "villab/matching.hpp"

#include <limits>
#include <queue>

namespace villab {

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

struct HopcroftKarp {
    const std::vector<std::vector<int>>& adj;
    std::vector<int> match_l, match_r, dist;

    HopcroftKarp(std::size_t n_left, std::size_t n_right,
                 const std::vector<std::vector<int>>& a)
        : adj(a),
          match_l(n_left, -1),
          match_r(n_right, -1),
          dist(n_left, kInf) {}

    bool bfs() {
        std::queue<int> q;
        for (std::size_t u = 0; u < match_l.size(); ++u) {
            if (match_l[u] == -1) {
                dist[u] = 0;
                q.push(static_cast<int>(u));
            } else {
                dist[u] = kInf;
            }
        }
        bool found_free_right = false;
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int v : adj[u]) {
                const int w = match_r[v];
                if (w == -1) {
                    found_free_right = true;
                } else if (dist[w] == kInf) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
            }
        }
        return found_free_right;
    }

    bool dfs(int u) {
        for (int v : adj[u]) {
            const int w = match_r[v];
            if (w == -1 || (dist[w] == dist[u] + 1 && dfs(w))) {
                match_l[u] = v;
                match_r[v] = u;
                return true;
            }
        }
        dist[u] = kInf;
        return false;
    }
};

}  // namespace

MaxMatching hopcroft_karp(std::size_t n_left, std::size_t n_right,
                          const std::vector<std::vector<int>>& adj) {
    HopcroftKarp hk(n_left, n_right, adj);
    MaxMatching out;
    while (hk.bfs()) {
        for (std::size_t u = 0; u < n_left; ++u)
            if (hk.match_l[u] == -1 && hk.dfs(static_cast<int>(u)))
                ++out.size;
    }
    out.left_to_right = std::move(hk.match_l);
    out.right_to_left = std::move(hk.match_r);
    return out;
}

}  // namespace villab
