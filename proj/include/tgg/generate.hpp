#pragma once

// Graph construction. The Bernoulli draw and the time-stamp for a pair (u,v)
// are pure functions of (seed, u, v), so the cell-index walk and the
// all-pairs reference walk produce bit-identical graphs: only the candidate
// enumeration differs, and pairs beyond the kernel support contribute nothing.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tgg/graph.hpp"

namespace tgg {

struct CellIndex {
    int dim;
    int cells_per_axis;
    double cell_size;                            // >= interaction range
    std::vector<std::vector<uint32_t>> members;  // bucket -> point ids

    std::size_t bucket_of(std::span<const double> p) const {
        std::size_t b = 0;
        for (int k = 0; k < dim; ++k) {
            int c = static_cast<int>(p[k] * cells_per_axis);
            if (c >= cells_per_axis) c = cells_per_axis - 1;
            b = b * cells_per_axis + static_cast<std::size_t>(c);
        }
        return b;
    }
};

// Bucket side is 1/cells_per_axis >= range, so interacting pairs are always
// in the same or an axis-adjacent bucket (wrapping).
inline CellIndex build_cell_index(const PointSet& ps, double range) {
    if (!(range > 0.0)) throw std::invalid_argument("build_cell_index: range must be > 0");
    CellIndex ci;
    ci.dim = ps.dim;
    ci.cells_per_axis = static_cast<int>(1.0 / range);
    if (ci.cells_per_axis < 3)
        throw std::invalid_argument("build_cell_index: fewer than 3 cells per axis");
    ci.cell_size = 1.0 / ci.cells_per_axis;
    std::size_t total = 1;
    for (int k = 0; k < ps.dim; ++k) total *= ci.cells_per_axis;
    ci.members.resize(total);
    for (std::size_t i = 0; i < ps.size(); ++i)
        ci.members[ci.bucket_of(ps.point(i))].push_back(static_cast<uint32_t>(i));
    return ci;
}

namespace detail {

inline double pair_dist2(const PointSet& ps, uint32_t u, uint32_t v) {
    const double* a = ps.coords.data() + static_cast<std::size_t>(u) * ps.dim;
    const double* b = ps.coords.data() + static_cast<std::size_t>(v) * ps.dim;
    double s = 0.0;
    for (int k = 0; k < ps.dim; ++k) {
        double d = std::fabs(a[k] - b[k]);
        if (d > 0.5) d = 1.0 - d;
        s += d * d;
    }
    return s;
}

// One keyed decision per unordered pair; also draws the keyed time-stamp.
struct PairSampler {
    const PointSet& ps;
    const Kernel& kernel;
    double r;
    uint64_t seed;
    double range2;  // (r * x_max)^2, squared support of the scaled kernel

    void try_pair(uint32_t u, uint32_t v, std::vector<TemporalEdge>& out) const {
        if (u > v) std::swap(u, v);
        double d2 = pair_dist2(ps, u, v);
        if (d2 > range2) return;
        double p;
        if (kernel.variant == KernelVariant::SoftTail)
            p = kernel_eval(kernel, std::sqrt(d2) / r);
        else
            p = d2 <= r * r ? kernel.alpha : 0.0;
        if (p <= 0.0) return;
        if (p < 1.0 && u01(mix64(seed, kStreamEdge, u, v)) >= p) return;
        out.push_back({u, v, u01(mix64(seed, kStreamTau, u, v))});
    }
};

inline void sort_edges(std::vector<TemporalEdge>& edges) {
    std::sort(edges.begin(), edges.end(), [](const TemporalEdge& a, const TemporalEdge& b) {
        if (a.tau != b.tau) return a.tau < b.tau;
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    });
}

}  // namespace detail

// Re-draws stamps that collide at 64-bit resolution (the canonically later
// pair moves) until all stamps are distinct, then sorts ascending.
inline void repair_time_stamp_ties(std::vector<TemporalEdge>& edges, uint64_t seed) {
    detail::sort_edges(edges);
    for (int round = 1; round < 64; ++round) {
        bool clean = true;
        for (std::size_t i = 1; i < edges.size(); ++i) {
            if (edges[i].tau == edges[i - 1].tau) {
                auto& e = edges[i];  // sort order put the larger (u,v) second
                e.tau = u01(mix64(mix64(seed, kStreamTau, e.u, e.v), static_cast<uint64_t>(round)));
                clean = false;
            }
        }
        if (clean) return;
        detail::sort_edges(edges);
    }
    throw std::runtime_error("repair_time_stamp_ties: stamps still colliding after 63 rounds");
}

// Fresh keyed stamps for an existing edge set (collisions repaired).
inline void assign_timestamps(std::vector<TemporalEdge>& edges, uint64_t seed) {
    for (auto& e : edges) e.tau = u01(mix64(seed, kStreamTau, e.u, e.v));
    repair_time_stamp_ties(edges, seed);
}

// Reference generator: every unordered pair gets its keyed decision.
inline TemporalGraph generate_graph_all_pairs(std::size_t n, int d, double r, const Kernel& kernel,
                                              uint64_t seed,
                                              const std::vector<std::vector<double>>& anchors = {}) {
    if (!(r > 0.0)) throw std::invalid_argument("generate_graph: r must be > 0");
    TemporalGraph g;
    g.kernel = kernel;
    g.kernel.d = d;
    g.r = r;
    g.seed = seed;
    g.points = sample_points(n, d, seed, anchors);
    double x_max = truncation_radius(g.kernel, 1e-300);
    double range = r * x_max;
    detail::PairSampler sampler{g.points, g.kernel, r, seed, range * range};
    std::size_t total = g.points.size();
    double cap = kernel.alpha * std::min(1.0, unit_ball_volume(d) * std::pow(range, d));
    g.edges.reserve(static_cast<std::size_t>(1.1 * cap * 0.5 * total * (total - 1.0)) + 64);
    for (uint32_t u = 0; u + 1 < total; ++u)
        for (uint32_t v = u + 1; v < total; ++v) sampler.try_pair(u, v, g.edges);
    repair_time_stamp_ties(g.edges, seed);
    return g;
}

// Cell-index generator; falls back to all-pairs when the interaction range
// is too large for a 3-cell-per-axis grid.
inline TemporalGraph generate_graph(std::size_t n, int d, double r, const Kernel& kernel,
                                    uint64_t seed,
                                    const std::vector<std::vector<double>>& anchors = {}) {
    if (!(r > 0.0)) throw std::invalid_argument("generate_graph: r must be > 0");
    Kernel kern = kernel;
    kern.d = d;
    double x_max = truncation_radius(kern, 1e-300);
    double range = r * x_max;
    if (range >= 1.0 / 3.0) return generate_graph_all_pairs(n, d, r, kernel, seed, anchors);

    TemporalGraph g;
    g.kernel = kern;
    g.r = r;
    g.seed = seed;
    g.points = sample_points(n, d, seed, anchors);
    CellIndex ci = build_cell_index(g.points, range);
    detail::PairSampler sampler{g.points, g.kernel, r, seed, range * range};
    std::size_t tot = g.points.size();
    double cap = kern.alpha * std::min(1.0, unit_ball_volume(d) * std::pow(range, d));
    g.edges.reserve(static_cast<std::size_t>(1.1 * cap * 0.5 * tot * (tot - 1.0)) + 64);

    // enumerate each unordered bucket pair once: same bucket, or neighbor
    // bucket with strictly larger flat id after wrapping
    int cpa = ci.cells_per_axis;
    std::vector<int> coord(d, 0), off(d, 0), nb(d, 0);
    std::size_t nbuckets = ci.members.size();
    for (std::size_t b = 0; b < nbuckets; ++b) {
        const auto& mine = ci.members[b];
        if (mine.empty()) {
            // still need to advance the odometer
        } else {
            for (std::size_t i = 0; i < mine.size(); ++i)
                for (std::size_t j = i + 1; j < mine.size(); ++j)
                    sampler.try_pair(mine[i], mine[j], g.edges);
            // neighbor buckets
            std::fill(off.begin(), off.end(), -1);
            while (true) {
                bool all_zero = std::all_of(off.begin(), off.end(), [](int o) { return o == 0; });
                if (!all_zero) {
                    std::size_t nb_id = 0;
                    for (int k = 0; k < d; ++k) {
                        int c = coord[k] + off[k];
                        if (c < 0) c += cpa;
                        if (c >= cpa) c -= cpa;
                        nb_id = nb_id * cpa + static_cast<std::size_t>(c);
                    }
                    if (nb_id > b) {
                        const auto& theirs = ci.members[nb_id];
                        for (uint32_t a : mine)
                            for (uint32_t c : theirs) sampler.try_pair(a, c, g.edges);
                    }
                }
                int k = d - 1;
                while (k >= 0 && off[k] == 1) off[k--] = -1;
                if (k < 0) break;
                ++off[k];
            }
        }
        int k = d - 1;
        while (k >= 0 && coord[k] == cpa - 1) coord[k--] = 0;
        if (k >= 0) ++coord[k];
    }
    repair_time_stamp_ties(g.edges, seed);
    return g;
}

}  // namespace tgg
