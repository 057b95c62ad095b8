#pragma once

// Temporal reachability: a path is valid when its stamps strictly increase.
// Because all stamps are distinct and edges are stored ascending, one pass
// over the edge list is enough: when edge (u,v,tau) is processed, everything
// already known about u used stamps < tau, which is exactly the prefix a
// monotone path through (u,v) may use.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tgg/graph.hpp"
#include "tgg/rng.hpp"

namespace tgg {

struct ReachabilityResult {
    std::vector<uint8_t> reachable;
    std::vector<int32_t> hops;      // minimal edge count, 0 at source, -1 unreachable
    std::vector<double> last_time;  // minimal final stamp; -inf at source, +inf unreachable
};

inline ReachabilityResult temporal_reach(const TemporalGraph& g, uint32_t source) {
    std::size_t n = g.n();
    if (source >= n) throw std::invalid_argument("temporal_reach: source out of range");
    constexpr double inf = std::numeric_limits<double>::infinity();
    ReachabilityResult res;
    res.reachable.assign(n, 0);
    res.hops.assign(n, -1);
    res.last_time.assign(n, inf);
    res.reachable[source] = 1;
    res.hops[source] = 0;
    res.last_time[source] = -inf;
    for (const auto& e : g.edges) {
        // pre-edge values for both directions; one edge extends a path once
        bool ru = res.reachable[e.u], rv = res.reachable[e.v];
        int32_t hu = res.hops[e.u], hv = res.hops[e.v];
        if (ru) {
            if (!res.reachable[e.v]) {
                res.reachable[e.v] = 1;
                res.last_time[e.v] = e.tau;
            }
            if (res.hops[e.v] < 0 || hu + 1 < res.hops[e.v]) res.hops[e.v] = hu + 1;
        }
        if (rv) {
            if (!res.reachable[e.u]) {
                res.reachable[e.u] = 1;
                res.last_time[e.u] = e.tau;
            }
            if (res.hops[e.u] < 0 || hv + 1 < res.hops[e.u]) res.hops[e.u] = hv + 1;
        }
    }
    return res;
}

// Reachability only, stopping as soon as the verdict is known.
// target == SIZE_MAX asks "does source reach everything".
inline bool temporal_reaches(const TemporalGraph& g, uint32_t source,
                             std::size_t target = SIZE_MAX) {
    std::size_t n = g.n();
    if (source >= n) throw std::invalid_argument("temporal_reaches: source out of range");
    if (target != SIZE_MAX && target == source) return true;
    std::vector<uint8_t> reach(n, 0);
    reach[source] = 1;
    std::size_t cnt = 1;
    for (const auto& e : g.edges) {
        bool ru = reach[e.u], rv = reach[e.v];
        if (ru != rv) {
            if (ru) {
                reach[e.v] = 1;
                if (target == e.v) return true;
            } else {
                reach[e.u] = 1;
                if (target == e.u) return true;
            }
            if (target == SIZE_MAX && ++cnt == n) return true;
        }
    }
    return false;
}

// Exhaustive oracle: enumerates every simple monotone path. Exponential;
// meant for cross-checking on small instances.
inline ReachabilityResult brute_force_reach(const TemporalGraph& g, uint32_t source,
                                            std::size_t max_n = 16) {
    std::size_t n = g.n();
    if (source >= n) throw std::invalid_argument("brute_force_reach: source out of range");
    if (n > max_n) throw std::invalid_argument("brute_force_reach: instance too large");
    constexpr double inf = std::numeric_limits<double>::infinity();
    ReachabilityResult res;
    res.reachable.assign(n, 0);
    res.hops.assign(n, -1);
    res.last_time.assign(n, inf);
    res.reachable[source] = 1;
    res.hops[source] = 0;
    res.last_time[source] = -inf;

    std::vector<std::vector<std::pair<uint32_t, double>>> adj(n);
    for (const auto& e : g.edges) {
        adj[e.u].push_back({e.v, e.tau});
        adj[e.v].push_back({e.u, e.tau});
    }
    std::vector<uint8_t> visited(n, 0);
    visited[source] = 1;
    auto dfs = [&](auto&& self, uint32_t v, double last, int depth) -> void {
        for (auto [w, tau] : adj[v]) {
            if (tau <= last || visited[w]) continue;
            res.reachable[w] = 1;
            if (res.hops[w] < 0 || depth + 1 < res.hops[w]) res.hops[w] = depth + 1;
            if (tau < res.last_time[w]) res.last_time[w] = tau;
            visited[w] = 1;
            self(self, w, tau, depth + 1);
            visited[w] = 0;
        }
    };
    dfs(dfs, source, -inf, 0);
    return res;
}

inline bool is_temporal_source(const TemporalGraph& g, uint32_t u) {
    return temporal_reaches(g, u, SIZE_MAX);
}

// All-sources reachability in one pass: row v is the bitset of vertices that
// reach v. Merging both endpoint rows on each ascending edge is exact for the
// same reason the single-source scan is. Rows only grow, so once every row is
// full nothing can change and the scan may stop.
struct MultiReach {
    std::size_t n = 0, words = 0;
    std::vector<uint64_t> rows;
    bool complete = false;  // true iff every ordered pair reaches

    bool reaches(uint32_t u, std::size_t v) const {
        return (rows[v * words + u / 64] >> (u % 64)) & 1;
    }
    std::vector<uint64_t> source_mask() const {  // AND over rows: bit u set iff u reaches all
        std::vector<uint64_t> acc(rows.begin(), rows.begin() + words);
        for (std::size_t v = 1; v < n; ++v)
            for (std::size_t w = 0; w < words; ++w) acc[w] &= rows[v * words + w];
        return acc;
    }
    std::size_t count_sources() const {
        std::size_t c = 0;
        for (uint64_t w : source_mask()) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }
};

inline MultiReach multi_reach(const TemporalGraph& g) {
    MultiReach mr;
    mr.n = g.n();
    mr.words = (mr.n + 63) / 64;
    mr.rows.assign(mr.n * mr.words, 0);
    for (std::size_t v = 0; v < mr.n; ++v) mr.rows[v * mr.words + v / 64] |= uint64_t{1} << (v % 64);
    uint64_t last_mask = (mr.n % 64) ? ((uint64_t{1} << (mr.n % 64)) - 1) : ~uint64_t{0};
    auto row_full = [&](const uint64_t* row) {
        for (std::size_t w = 0; w + 1 < mr.words; ++w)
            if (row[w] != ~uint64_t{0}) return false;
        return row[mr.words - 1] == last_mask;
    };
    std::vector<uint8_t> full(mr.n, 0);
    std::size_t full_cnt = 0;
    if (mr.n == 1) full_cnt = 1, full[0] = 1;
    for (const auto& e : g.edges) {
        if (full[e.u] && full[e.v]) continue;
        uint64_t* ru = mr.rows.data() + static_cast<std::size_t>(e.u) * mr.words;
        uint64_t* rv = mr.rows.data() + static_cast<std::size_t>(e.v) * mr.words;
        for (std::size_t w = 0; w < mr.words; ++w) {
            uint64_t t = ru[w] | rv[w];
            ru[w] = t;
            rv[w] = t;
        }
        if (row_full(ru)) {
            if (!full[e.u]) full[e.u] = 1, ++full_cnt;
            if (!full[e.v]) full[e.v] = 1, ++full_cnt;
            if (full_cnt == mr.n) break;  // nothing can change any more
        }
    }
    mr.complete = full_cnt == mr.n;
    if (!mr.complete) {
        mr.complete = true;
        for (std::size_t v = 0; v < mr.n && mr.complete; ++v)
            mr.complete = row_full(mr.rows.data() + v * mr.words);
    }
    return mr;
}

// Cheap necessary condition first (one random source), full check only then.
inline bool is_temporally_connected(const TemporalGraph& g) {
    if (g.n() <= 1) return true;
    uint32_t probe = static_cast<uint32_t>(mix64(g.seed, kStreamSource, g.n()) % g.n());
    if (!temporal_reaches(g, probe)) return false;
    return multi_reach(g).complete;
}

// Longest strictly-increasing walk (vertices may repeat). Single ascending
// pass; pre-edge values on both sides since one edge extends a walk once.
inline int longest_increasing_walk(const TemporalGraph& g) {
    std::vector<int> len(g.n(), 0);
    int best = 0;
    for (const auto& e : g.edges) {
        int a = len[e.u], b = len[e.v];
        if (b + 1 > len[e.u]) len[e.u] = b + 1;
        if (a + 1 > len[e.v]) len[e.v] = a + 1;
        best = std::max({best, len[e.u], len[e.v]});
    }
    return best;
}

namespace detail {

// incidence lists sorted by stamp (edges arrive pre-sorted)
struct Adjacency {
    std::vector<uint32_t> offset;
    std::vector<std::pair<uint32_t, uint32_t>> inc;  // (edge index, other endpoint)

    explicit Adjacency(const TemporalGraph& g) {
        std::size_t n = g.n();
        offset.assign(n + 1, 0);
        for (const auto& e : g.edges) {
            ++offset[e.u + 1];
            ++offset[e.v + 1];
        }
        for (std::size_t v = 0; v < n; ++v) offset[v + 1] += offset[v];
        inc.resize(2 * g.edges.size());
        std::vector<uint32_t> cur(offset.begin(), offset.end() - 1);
        for (uint32_t i = 0; i < g.edges.size(); ++i) {
            const auto& e = g.edges[i];
            inc[cur[e.u]++] = {i, e.v};
            inc[cur[e.v]++] = {i, e.u};
        }
    }
};

}  // namespace detail

struct LongestPathResult {
    int length = 0;                  // edges on the best simple monotone path
    std::vector<uint32_t> vertices;  // witness, length+1 entries
};

// Exact longest simple monotone path via branch and bound. The bound is the
// longest monotone walk starting with a given edge, computed by a descending
// sweep; walks dominate paths. Throws when the node budget runs out.
inline LongestPathResult longest_increasing_path_exact(const TemporalGraph& g,
                                                       uint64_t node_budget = 10'000'000) {
    std::size_t m = g.edges.size();
    LongestPathResult best;
    if (m == 0) return best;
    detail::Adjacency adj(g);

    // walk_bound[2i] : walk starting u->v along edge i; [2i+1] : v->u
    std::vector<int> walk_bound(2 * m, 1);
    {
        std::vector<int> from(g.n(), 0);  // longest walk starting at v using later edges
        for (std::size_t i = m; i-- > 0;) {
            const auto& e = g.edges[i];
            int fwd = 1 + from[e.v], rev = 1 + from[e.u];
            walk_bound[2 * i] = fwd;
            walk_bound[2 * i + 1] = rev;
            if (fwd > from[e.u]) from[e.u] = fwd;
            if (rev > from[e.v]) from[e.v] = rev;
        }
    }

    std::vector<uint8_t> visited(g.n(), 0);
    std::vector<uint32_t> stack;
    uint64_t nodes = 0;
    auto extend = [&](auto&& self, uint32_t v, int64_t last_edge, int len) -> void {
        if (++nodes > node_budget)
            throw std::runtime_error("longest_increasing_path_exact: node budget exhausted");
        if (len > best.length) {
            best.length = len;
            best.vertices = stack;
        }
        auto lo = adj.offset[v], hi = adj.offset[v + 1];
        // incident edges are stamp-sorted; only strictly later ones qualify
        auto it = std::upper_bound(adj.inc.begin() + lo, adj.inc.begin() + hi, last_edge,
                                   [](int64_t le, const auto& p) {
                                       return static_cast<int64_t>(p.first) > le;
                                   });
        for (; it != adj.inc.begin() + hi; ++it) {
            auto [ei, w] = *it;
            if (visited[w]) continue;
            int dir = g.edges[ei].u == v ? 0 : 1;
            if (len + walk_bound[2 * ei + dir] <= best.length) continue;
            visited[w] = 1;
            stack.push_back(w);
            self(self, w, ei, len + 1);
            stack.pop_back();
            visited[w] = 0;
        }
    };
    for (uint32_t start = 0; start < g.n(); ++start) {
        visited[start] = 1;
        stack.assign(1, start);
        extend(extend, start, -1, 0);
        visited[start] = 0;
    }
    return best;
}

namespace detail {

inline void count_paths_dfs(const TemporalGraph& g, const Adjacency& adj,
                            std::vector<uint8_t>& visited, uint32_t v, int64_t last_edge,
                            std::size_t depth, std::size_t k, bool at_least, uint64_t& count,
                            uint64_t& budget) {
    if (budget == 0) throw std::runtime_error("count_monotone_paths: node budget exhausted");
    --budget;
    if (depth >= k) {
        ++count;
        if (!at_least) return;  // exact variant stops at k vertices
    }
    auto lo = adj.offset[v], hi = adj.offset[v + 1];
    auto it = std::upper_bound(adj.inc.begin() + lo, adj.inc.begin() + hi, last_edge,
                               [](int64_t le, const auto& p) {
                                   return static_cast<int64_t>(p.first) > le;
                               });
    for (; it != adj.inc.begin() + hi; ++it) {
        auto [ei, w] = *it;
        if (visited[w]) continue;
        visited[w] = 1;
        count_paths_dfs(g, adj, visited, w, ei, depth + 1, k, at_least, count, budget);
        visited[w] = 0;
    }
}

inline uint64_t count_paths(const TemporalGraph& g, std::size_t k_vertices, bool at_least,
                            uint64_t budget) {
    if (k_vertices < 2) throw std::invalid_argument("count_monotone_paths: need k >= 2 vertices");
    detail::Adjacency adj(g);
    std::vector<uint8_t> visited(g.n(), 0);
    uint64_t count = 0;
    for (uint32_t s = 0; s < g.n(); ++s) {
        visited[s] = 1;
        detail::count_paths_dfs(g, adj, visited, s, -1, 1, k_vertices, at_least, count, budget);
        visited[s] = 0;
    }
    return count;
}

}  // namespace detail

// Ordered simple monotone paths on exactly k vertices (k-1 edges). This is
// the tuple count the first-moment bound controls.
inline uint64_t count_monotone_paths(const TemporalGraph& g, std::size_t k_vertices,
                                     uint64_t budget = 100'000'000) {
    return detail::count_paths(g, k_vertices, false, budget);
}

// Ordered simple monotone paths on at least k vertices (>= k-1 edges).
inline uint64_t count_monotone_paths_min_edges(const TemporalGraph& g, std::size_t k_vertices,
                                               uint64_t budget = 100'000'000) {
    return detail::count_paths(g, k_vertices, true, budget);
}

// Full per-source connectivity summary: O(n m), for inspection-scale graphs.
struct ConnectivityReport {
    std::size_t n = 0, m = 0;
    bool temporally_connected = false;
    std::size_t num_temporal_sources = 0;
    std::optional<uint32_t> witness_non_source;
    int32_t max_shortest_hops = 0;  // max over reachable ordered pairs
};

inline ConnectivityReport connectivity_report(const TemporalGraph& g) {
    ConnectivityReport rep;
    rep.n = g.n();
    rep.m = g.m();
    for (uint32_t s = 0; s < g.n(); ++s) {
        ReachabilityResult res = temporal_reach(g, s);
        bool source = true;
        for (std::size_t v = 0; v < g.n(); ++v) {
            if (!res.reachable[v]) {
                source = false;
                continue;
            }
            rep.max_shortest_hops = std::max(rep.max_shortest_hops, res.hops[v]);
        }
        if (source)
            ++rep.num_temporal_sources;
        else if (!rep.witness_non_source)
            rep.witness_non_source = s;
    }
    rep.temporally_connected = rep.num_temporal_sources == rep.n;
    return rep;
}

// Union-find connectivity of the footprint graph (stamps ignored).
inline bool is_simply_connected(const TemporalGraph& g) {
    std::size_t n = g.n();
    if (n <= 1) return true;
    std::vector<uint32_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<uint32_t>(i);
    auto find = [&](uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t comps = n;
    for (const auto& e : g.edges) {
        uint32_t a = find(e.u), b = find(e.v);
        if (a != b) {
            parent[a] = b;
            if (--comps == 1) return true;
        }
    }
    return comps == 1;
}

}  // namespace tgg
