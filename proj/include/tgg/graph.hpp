#pragma once

#include <cstdint>
#include <vector>

#include "tgg/geometry.hpp"
#include "tgg/kernel.hpp"

namespace tgg {

struct TemporalEdge {
    uint32_t u, v;  // endpoints, u < v
    double tau;     // time-stamp in [0,1]
    friend bool operator==(const TemporalEdge&, const TemporalEdge&) = default;
};

// Undirected geometric graph whose edges carry distinct time-stamps.
// Edges are kept sorted by tau ascending; time-stamps are pairwise distinct.
struct TemporalGraph {
    Kernel kernel;
    double r = 0.0;
    uint64_t seed = 0;
    PointSet points;
    std::vector<TemporalEdge> edges;

    std::size_t n() const { return points.size(); }
    int dim() const { return points.dim; }
    std::size_t m() const { return edges.size(); }
};

inline bool operator==(const TemporalGraph& a, const TemporalGraph& b) {
    return a.kernel.variant == b.kernel.variant && a.kernel.alpha == b.kernel.alpha &&
           a.kernel.beta == b.kernel.beta && a.r == b.r && a.seed == b.seed &&
           a.points.dim == b.points.dim && a.points.coords == b.points.coords &&
           a.edges == b.edges;
}

// Invariants every construction path must leave behind.
inline void check_graph(const TemporalGraph& g) {
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const auto& e = g.edges[i];
        if (e.u >= e.v) throw std::logic_error("graph invariant: edge endpoints not u < v");
        if (e.v >= g.n()) throw std::logic_error("graph invariant: endpoint out of range");
        if (!(e.tau >= 0.0 && e.tau <= 1.0)) throw std::logic_error("graph invariant: tau outside [0,1]");
        if (i > 0 && !(g.edges[i - 1].tau < e.tau))
            throw std::logic_error("graph invariant: time-stamps not strictly ascending");
    }
}

}  // namespace tgg
