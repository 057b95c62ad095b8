#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "tgg/generate.hpp"
#include "tgg/geometry.hpp"
#include "tgg/graph.hpp"
#include "tgg/rng.hpp"
#include "tgg/temporal.hpp"
#include "tgg/util.hpp"

// Box-grid construction over the quadrant [0,1/2]^2 (d = 2 only), the
// directed up/right lattice on the boxes, per-diagonal time ranges, open
// probabilities, Monte Carlo for the lattice events, the per-box point
// concentration event, and the coupling check that ties lattice openness
// back to real temporal graphs.

namespace tgg {

// ---------------------------------------------------------------------------
// box grid

// Boxes of side ell tile [0,1/2]^2, indexed (i,j) with 0 <= i,j <= b.
// The nominal side r/(4*sqrt(2)) rarely divides 1/2 evenly, so we round the
// box count and recompute ell; grid_r() is the radius the rounded grid
// corresponds to, requested_r is what the caller asked for.
struct BoxGrid {
    double requested_r = 0.0;
    double ell = 0.0;
    int b = 0;

    int boxes_per_axis() const { return b + 1; }
    double grid_r() const { return 4.0 * std::sqrt(2.0) * ell; }
};

inline BoxGrid build_box_grid_from_radius(double r) {
    if (!(r > 0.0)) throw std::invalid_argument("build_box_grid: r must be > 0");
    double ell0 = r / (4.0 * std::sqrt(2.0));
    long long k = std::llround(1.0 / (2.0 * ell0));  // k = b + 1
    if (k < 2) {
        // need 1/(2*ell0) >= 1.5 so the rounded count is at least 2
        double r_max = 4.0 * std::sqrt(2.0) / 3.0;
        std::ostringstream os;
        os << "build_box_grid: r = " << r << " leaves fewer than 2 boxes per axis; "
           << "need r <= " << r_max;
        throw std::invalid_argument(os.str());
    }
    BoxGrid g;
    g.requested_r = r;
    g.b = static_cast<int>(k - 1);
    g.ell = 1.0 / (2.0 * static_cast<double>(k));
    return g;
}

inline BoxGrid build_box_grid(std::size_t n, double C) {
    if (n == 0 || !(C > 0.0)) throw std::invalid_argument("build_box_grid: need n >= 1, C > 0");
    double r = C * std::pow(static_cast<double>(n), -1.0 / 3.0);
    double ell0 = r / (4.0 * std::sqrt(2.0));
    if (std::llround(1.0 / (2.0 * ell0)) < 2) {
        // 2*sqrt(2)*n^{1/3}/C >= 1.5  <=>  n >= (1.5*C/(2*sqrt(2)))^3
        double nf = std::pow(1.5 * C / (2.0 * std::sqrt(2.0)), 3.0);
        std::ostringstream os;
        os << "build_box_grid: n = " << n << " too small at C = " << C
           << "; nearest feasible n is " << static_cast<long long>(std::ceil(nf));
        throw std::invalid_argument(os.str());
    }
    return build_box_grid_from_radius(r);
}

// Box of a point, or nullopt when it lies outside [0,1/2)^2. x == 1/2
// deliberately falls outside: the top anchor sits on the corner of the last
// box and is handled by the completion step, not by box membership.
inline std::optional<std::pair<int, int>> box_of_point(const BoxGrid& grid, double x, double y) {
    if (!(x >= 0.0 && x < 0.5 && y >= 0.0 && y < 0.5)) return std::nullopt;
    int i = std::min(grid.b, static_cast<int>(x / grid.ell));
    int j = std::min(grid.b, static_cast<int>(y / grid.ell));
    return std::make_pair(i, j);
}

// ---------------------------------------------------------------------------
// time ranges

// One half-open interval T_m = (lo_m, hi_m] per diagonal index m in
// [0, 2b). Widths: 1/(4A) in the outer regions (m < A and m >= 2b-A),
// (1/2)/(2b-2A) in the middle, where A is the rounded n^eps/4. hi_m is
// defined as lo_{m+1}, so contiguity and the region-boundary identities
// (lo_A = 1/4, lo_{2b-A} = 3/4, hi_{2b-1} = 1) hold exactly.
struct RangeTable {
    std::size_t n = 0;
    double eps = 0.0;
    int b = 0;
    int A = 0;

    int m_count() const { return 2 * b; }
    int region(int m) const {
        if (m < A) return 1;
        if (m < 2 * b - A) return 2;
        return 3;
    }
    double lo(int m) const {
        if (m < 0 || m >= 2 * b) throw std::out_of_range("RangeTable::lo: m outside [0, 2b)");
        if (m < A) return static_cast<double>(m) / (4.0 * A);
        if (m < 2 * b - A)
            return 0.25 + static_cast<double>(m - A) * (0.5 / static_cast<double>(2 * b - 2 * A));
        return 1.0 - static_cast<double>(2 * b - m) / (4.0 * A);
    }
    double hi(int m) const { return m + 1 == 2 * b ? 1.0 : lo(m + 1); }
    double width(int m) const { return hi(m) - lo(m); }
    bool contains(int m, double tau) const { return tau > lo(m) && tau <= hi(m); }
};

inline RangeTable build_range_table(std::size_t n, double eps, const BoxGrid& grid) {
    if (!(eps > 0.0 && eps < 1.0 / 3.0))
        throw std::invalid_argument("build_range_table: eps must lie in (0, 1/3)");
    RangeTable t;
    t.n = n;
    t.eps = eps;
    t.b = grid.b;
    t.A = static_cast<int>(std::max<long long>(1, std::llround(std::pow(static_cast<double>(n), eps) / 4.0)));
    if (t.A >= t.b) {
        // middle region would be empty and the outer regions cannot meet at 1/4 and 3/4
        std::size_t nf = n;
        double C_equiv = grid.requested_r * std::pow(static_cast<double>(n), 1.0 / 3.0);
        while (nf < (std::size_t(1) << 48)) {
            nf *= 2;
            BoxGrid g2 = build_box_grid(nf, C_equiv);
            long long A2 = std::max<long long>(1, std::llround(std::pow(static_cast<double>(nf), eps) / 4.0));
            if (A2 < g2.b) break;
        }
        std::ostringstream os;
        os << "build_range_table: rounded n^eps/4 = " << t.A << " must be < b = " << t.b
           << "; increase n (feasible by n ~ " << nf << ") or decrease eps";
        throw std::invalid_argument(os.str());
    }
    return t;
}

// The middle-region width as printed in the source analysis,
// 4(n^eps - 2) n^{-eps} / (8b - n^eps), kept for the contour series. It does
// not tile (1/4, 3/4] exactly, which is why the table above uses the exact
// tiling width instead.
inline double nominal_r2_width(std::size_t n, double eps, int b) {
    double ne = std::pow(static_cast<double>(n), eps);
    double denom = 8.0 * b - ne;
    if (!(ne > 2.0) || !(denom > 0.0))
        throw std::invalid_argument("nominal_r2_width: need n^eps > 2 and 8b > n^eps");
    return 4.0 * (ne - 2.0) / (ne * denom);
}

// ---------------------------------------------------------------------------
// lattice

// Directed edges go right (i,j)->(i+1,j) for i<b and up (i,j)->(i,j+1) for
// j<b, boundary rows included; 2b(b+1) in total. Edge ids: right edges first
// (j*b + i), then up edges (b*(b+1) + j*(b+1) + i).
inline std::size_t lattice_edge_count(int b) {
    return 2 * static_cast<std::size_t>(b) * (b + 1);
}

inline std::size_t lattice_vertex_id(int b, int i, int j) {
    return static_cast<std::size_t>(j) * (b + 1) + i;
}

// Box grid, dual-lattice shape, and time ranges in one call.
struct GridBundle {
    BoxGrid grid;
    RangeTable table;
    std::size_t lattice_edges = 0;
};

inline GridBundle build_grid(std::size_t n, double C, double eps) {
    GridBundle gb;
    gb.grid = build_box_grid(n, C);
    gb.table = build_range_table(n, eps, gb.grid);
    gb.lattice_edges = lattice_edge_count(gb.grid.b);
    return gb;
}

struct PercParams {
    std::size_t n = 0;
    double C = 8.0;
    double eps = 0.2;
    double t = 0.01;
    double alpha = 1.0;
};

// Per-edge open probability from the diagonal index m of the source box:
//   q = 1 - (1 - alpha*|T_m|)^{n_lo}   (one of n_lo points lands in range)
//   p = q^{n_hi} in the outer regions, q in the middle,
// with n_lo = max(1, floor((1-t) N)) and n_hi = ceil((1+t) N).
inline double open_prob(double alpha_width, long long n_lo, long long n_hi, bool middle) {
    if (alpha_width < 0.0 || alpha_width > 1.0 + 1e-12)
        throw std::invalid_argument("open_prob: alpha*|T_m| must lie in [0,1]");
    alpha_width = std::min(alpha_width, 1.0);
    if (n_lo < 1 || n_hi < 1) throw std::invalid_argument("open_prob: counts must be >= 1");
    double q = 1.0 - std::pow(1.0 - alpha_width, static_cast<double>(n_lo));
    return middle ? q : std::pow(q, static_cast<double>(n_hi));
}

struct PercolationInstance {
    PercParams params;
    BoxGrid grid;
    RangeTable table;
    double N = 0.0;      // n * ell^2, the realized mean box occupancy
    long long n_lo = 0;  // max(1, floor((1-t)N))
    long long n_hi = 0;  // ceil((1+t)N)
    std::vector<double> p_by_m;
    std::vector<uint8_t> right;  // open bits, right[j*b + i]; empty until sampled
    std::vector<uint8_t> up;     // open bits, up[j*(b+1) + i]

    int b() const { return grid.b; }
    bool right_open(int i, int j) const { return right[static_cast<std::size_t>(j) * b() + i] != 0; }
    bool up_open(int i, int j) const { return up[static_cast<std::size_t>(j) * (b() + 1) + i] != 0; }
};

inline PercolationInstance build_percolation(const PercParams& p) {
    if (!(p.alpha > 0.0 && p.alpha <= 1.0))
        throw std::invalid_argument("build_percolation: alpha must lie in (0,1]");
    if (!(p.t > 0.0 && p.t < 1.0))
        throw std::invalid_argument("build_percolation: t must lie in (0,1)");
    PercolationInstance inst;
    inst.params = p;
    inst.grid = build_box_grid(p.n, p.C);
    inst.table = build_range_table(p.n, p.eps, inst.grid);
    inst.N = static_cast<double>(p.n) * inst.grid.ell * inst.grid.ell;
    inst.n_lo = std::max<long long>(1, static_cast<long long>(std::floor((1.0 - p.t) * inst.N)));
    inst.n_hi = static_cast<long long>(std::ceil((1.0 + p.t) * inst.N));
    inst.p_by_m.resize(inst.table.m_count());
    for (int m = 0; m < inst.table.m_count(); ++m)
        inst.p_by_m[m] = open_prob(p.alpha * inst.table.width(m), inst.n_lo, inst.n_hi,
                                   inst.table.region(m) == 2);
    return inst;
}

inline double edge_open_probability(const PercolationInstance& inst, int m) {
    if (m < 0 || m >= inst.table.m_count())
        throw std::out_of_range("edge_open_probability: m outside [0, 2b)");
    return inst.p_by_m[m];
}

// Each edge keyed by (seed, edge id): re-sampling with the same seed is a
// no-op and the draw order never matters.
inline void sample_open(PercolationInstance& inst, uint64_t seed) {
    int b = inst.b();
    inst.right.assign(static_cast<std::size_t>(b) * (b + 1), 0);
    inst.up.assign(static_cast<std::size_t>(b) * (b + 1), 0);
    std::size_t id = 0;
    for (int j = 0; j <= b; ++j)
        for (int i = 0; i < b; ++i, ++id)
            inst.right[static_cast<std::size_t>(j) * b + i] =
                u01(mix64(seed, kStreamPerc, id)) < inst.p_by_m[i + j] ? 1 : 0;
    for (int j = 0; j < b; ++j)
        for (int i = 0; i <= b; ++i, ++id)
            inst.up[static_cast<std::size_t>(j) * (b + 1) + i] =
                u01(mix64(seed, kStreamPerc, id)) < inst.p_by_m[i + j] ? 1 : 0;
}

inline PercolationInstance sample_percolation(const PercParams& p, uint64_t seed) {
    PercolationInstance inst = build_percolation(p);
    sample_open(inst, seed);
    return inst;
}

// Reachability over open edges. Every edge goes from diagonal m to m+1, so a
// single ascending sweep over diagonals is complete.
inline std::vector<uint8_t> lattice_reach(const PercolationInstance& inst,
                                          const std::vector<std::pair<int, int>>& starts) {
    int b = inst.b();
    if (inst.right.empty()) throw std::logic_error("lattice_reach: instance not sampled");
    std::vector<uint8_t> reach(static_cast<std::size_t>(b + 1) * (b + 1), 0);
    for (auto [i, j] : starts) {
        if (i < 0 || j < 0 || i > b || j > b)
            throw std::invalid_argument("lattice_reach: start box out of range");
        reach[lattice_vertex_id(b, i, j)] = 1;
    }
    for (int m = 0; m < 2 * b; ++m) {
        for (int i = std::max(0, m - b); i <= std::min(m, b); ++i) {
            int j = m - i;
            if (!reach[lattice_vertex_id(b, i, j)]) continue;
            if (i < b && inst.right_open(i, j)) reach[lattice_vertex_id(b, i + 1, j)] = 1;
            if (j < b && inst.up_open(i, j)) reach[lattice_vertex_id(b, i, j + 1)] = 1;
        }
    }
    return reach;
}

inline bool open_path_exists(const PercolationInstance& inst,
                             const std::vector<std::pair<int, int>>& from_set,
                             const std::vector<std::pair<int, int>>& to_set) {
    std::vector<uint8_t> reach = lattice_reach(inst, from_set);
    for (auto [i, j] : to_set) {
        if (i < 0 || j < 0 || i > inst.b() || j > inst.b())
            throw std::invalid_argument("open_path_exists: target box out of range");
        if (reach[lattice_vertex_id(inst.b(), i, j)]) return true;
    }
    return false;
}

inline std::vector<std::pair<int, int>> diagonal_boxes(int b, int m) {
    std::vector<std::pair<int, int>> out;
    for (int i = std::max(0, m - b); i <= std::min(m, b); ++i) out.emplace_back(i, m - i);
    return out;
}

// The three lattice events: reach every box on diagonal A from the corner,
// cross the middle band from diagonal A to diagonal 2b-A, and corner to
// corner.
inline bool reaches_all_of_first_diagonal(const PercolationInstance& inst) {
    std::vector<uint8_t> reach = lattice_reach(inst, {{0, 0}});
    for (auto [i, j] : diagonal_boxes(inst.b(), inst.table.A))
        if (!reach[lattice_vertex_id(inst.b(), i, j)]) return false;
    return true;
}

inline bool crosses_middle(const PercolationInstance& inst) {
    return open_path_exists(inst, diagonal_boxes(inst.b(), inst.table.A),
                            diagonal_boxes(inst.b(), 2 * inst.b() - inst.table.A));
}

inline bool end_to_end(const PercolationInstance& inst) {
    std::vector<uint8_t> reach = lattice_reach(inst, {{0, 0}});
    return reach[lattice_vertex_id(inst.b(), inst.b(), inst.b())] != 0;
}

struct LemmaEstimates {
    int trials = 0;
    double p_first_diagonal = 0.0, p_cross_middle = 0.0, p_end_to_end = 0.0;
    WilsonCi ci_first_diagonal, ci_cross_middle, ci_end_to_end;
};

inline LemmaEstimates estimate_lemma_events(const PercParams& params, int trials, uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("estimate_lemma_events: trials must be >= 1");
    PercolationInstance inst = build_percolation(params);
    uint64_t c1 = 0, c2 = 0, c3 = 0;
    for (int t = 0; t < trials; ++t) {
        sample_open(inst, mix64(seed, kStreamTrial, static_cast<uint64_t>(t)));
        if (reaches_all_of_first_diagonal(inst)) ++c1;
        if (crosses_middle(inst)) ++c2;
        if (end_to_end(inst)) ++c3;
    }
    LemmaEstimates est;
    est.trials = trials;
    est.p_first_diagonal = static_cast<double>(c1) / trials;
    est.p_cross_middle = static_cast<double>(c2) / trials;
    est.p_end_to_end = static_cast<double>(c3) / trials;
    est.ci_first_diagonal = wilson_ci(c1, trials);
    est.ci_cross_middle = wilson_ci(c2, trials);
    est.ci_end_to_end = wilson_ci(c3, trials);
    return est;
}

// ---------------------------------------------------------------------------
// concentration

struct BoxCounts {
    int b = 0;
    std::vector<long long> counts;  // (b+1)^2 entries, index j*(b+1)+i
};

inline BoxCounts count_points_in_boxes(const PointSet& ps, const BoxGrid& grid) {
    if (ps.dim != 2) throw std::invalid_argument("count_points_in_boxes: d must be 2");
    BoxCounts bc;
    bc.b = grid.b;
    bc.counts.assign(static_cast<std::size_t>(grid.b + 1) * (grid.b + 1), 0);
    for (std::size_t v = 0; v < ps.size(); ++v) {
        auto p = ps.point(v);
        if (auto box = box_of_point(grid, p[0], p[1]))
            ++bc.counts[lattice_vertex_id(grid.b, box->first, box->second)];
    }
    return bc;
}

struct ConcentrationResult {
    bool holds = false;
    double max_dev = 0.0;  // max over boxes of |count - N|
    double N = 0.0;
};

// Event: every box count deviates from N by strictly less than t*N. All
// points inside the quadrant are counted (anchors shift one box by at most
// one); N defaults to the random-point mean n_random * ell^2.
inline ConcentrationResult concentration_event(const PointSet& ps, const BoxGrid& grid, double t,
                                               double N) {
    BoxCounts bc = count_points_in_boxes(ps, grid);
    ConcentrationResult res;
    res.N = N;
    for (long long c : bc.counts)
        res.max_dev = std::max(res.max_dev, std::fabs(static_cast<double>(c) - N));
    res.holds = res.max_dev < t * N;
    return res;
}

inline ConcentrationResult concentration_event(const PointSet& ps, const BoxGrid& grid, double t) {
    return concentration_event(ps, grid, t,
                               static_cast<double>(ps.n_random) * grid.ell * grid.ell);
}

inline ConcentrationResult concentration_event(const TemporalGraph& g, const BoxGrid& grid,
                                               double t) {
    return concentration_event(g.points, grid, t);
}

struct FailureRate {
    int trials = 0;
    int failures = 0;
    double freq = 0.0;
    WilsonCi ci;
};

// The event depends on the points only, so trials sample point sets, not
// graphs.
inline FailureRate concentration_failure_rate(std::size_t n, double C, double t, int trials,
                                              uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("concentration_failure_rate: trials must be >= 1");
    BoxGrid grid = build_box_grid(n, C);
    FailureRate fr;
    fr.trials = trials;
    for (int k = 0; k < trials; ++k) {
        PointSet ps = sample_points(n, 2, mix64(seed, kStreamTrial, static_cast<uint64_t>(k)));
        if (!concentration_event(ps, grid, t).holds) ++fr.failures;
    }
    fr.freq = static_cast<double>(fr.failures) / trials;
    fr.ci = wilson_ci(static_cast<uint64_t>(fr.failures), static_cast<uint64_t>(trials));
    return fr;
}

// ---------------------------------------------------------------------------
// graph-side openness and the coupling check

// Vertex-in-box lists plus an edge->stamp lookup for one graph, shared by
// all box-edge queries against it.
struct GraphBoxView {
    const TemporalGraph* g = nullptr;
    BoxGrid grid;
    std::vector<std::vector<uint32_t>> members;  // (b+1)^2 lists
    std::unordered_map<uint64_t, double> stamp;  // key (u<<32)|v with u<v

    bool edge_stamp(uint32_t a, uint32_t c, double& tau) const {
        if (a == c) return false;
        uint64_t key = a < c ? (static_cast<uint64_t>(a) << 32) | c
                             : (static_cast<uint64_t>(c) << 32) | a;
        auto it = stamp.find(key);
        if (it == stamp.end()) return false;
        tau = it->second;
        return true;
    }
};

inline GraphBoxView build_box_view(const TemporalGraph& g, const BoxGrid& grid) {
    if (g.dim() != 2) throw std::invalid_argument("build_box_view: d must be 2");
    GraphBoxView view;
    view.g = &g;
    view.grid = grid;
    view.members.resize(static_cast<std::size_t>(grid.b + 1) * (grid.b + 1));
    for (std::size_t v = 0; v < g.n(); ++v) {
        auto p = g.points.point(v);
        if (auto box = box_of_point(grid, p[0], p[1]))
            view.members[lattice_vertex_id(grid.b, box->first, box->second)].push_back(
                static_cast<uint32_t>(v));
    }
    view.stamp.reserve(g.edges.size() * 2);
    for (const TemporalEdge& e : g.edges)
        view.stamp.emplace((static_cast<uint64_t>(e.u) << 32) | e.v, e.tau);
    return view;
}

struct BoxEdgeStatus {
    bool open = false;
    bool vacuous = false;  // source box empty: universally-quantified over nothing
};

// Lattice edge (i,j) -> (i+1,j) or (i,j+1) is open in the graph when every
// vertex of the source box has a neighbour in the target box whose stamp
// lies in T_{i+j}.
inline BoxEdgeStatus box_edge_open_in_graph(const GraphBoxView& view, const RangeTable& table,
                                            int i, int j, bool up) {
    int b = view.grid.b;
    if (i < 0 || j < 0 || i > b || j > b || (up ? j >= b : i >= b))
        throw std::invalid_argument("box_edge_open_in_graph: edge out of range");
    int m = i + j;
    const auto& src = view.members[lattice_vertex_id(b, i, j)];
    const auto& dst = view.members[lattice_vertex_id(b, up ? i : i + 1, up ? j + 1 : j)];
    BoxEdgeStatus st;
    if (src.empty()) {
        st.open = true;
        st.vacuous = true;
        return st;
    }
    for (uint32_t u : src) {
        bool found = false;
        double tau = 0.0;
        for (uint32_t v : dst) {
            if (view.edge_stamp(u, v, tau) && table.contains(m, tau)) {
                found = true;
                break;
            }
        }
        if (!found) return st;  // open = false
    }
    st.open = true;
    return st;
}

struct CouplingReport {
    bool open_path_found = false;
    bool completion_found = false;
    bool reach_confirmed = false;
    bool implication_holds = true;
    int vacuous_on_path = 0;
    std::string note;
};

namespace detail {

// Ascending-diagonal sweep over graph-open lattice edges from the corner
// box; returns the edge list of one open path to (b,b), or empty.
struct PathEdge {
    int i, j;
    bool up;
};

inline std::vector<PathEdge> graph_open_path(const GraphBoxView& view, const RangeTable& table,
                                             std::vector<uint8_t>* vacuous_flags) {
    int b = view.grid.b;
    std::size_t nv = static_cast<std::size_t>(b + 1) * (b + 1);
    std::vector<int8_t> from(nv, -1);  // -1 unreached, 0 via right edge, 1 via up, 2 start
    from[0] = 2;
    for (int m = 0; m < 2 * b; ++m) {
        for (int i = std::max(0, m - b); i <= std::min(m, b); ++i) {
            int j = m - i;
            if (from[lattice_vertex_id(b, i, j)] < 0) continue;
            if (i < b && from[lattice_vertex_id(b, i + 1, j)] < 0) {
                BoxEdgeStatus st = box_edge_open_in_graph(view, table, i, j, false);
                if (st.open) {
                    from[lattice_vertex_id(b, i + 1, j)] = 0;
                    if (st.vacuous && vacuous_flags)
                        (*vacuous_flags)[lattice_vertex_id(b, i + 1, j)] = 1;
                }
            }
            if (j < b && from[lattice_vertex_id(b, i, j + 1)] < 0) {
                BoxEdgeStatus st = box_edge_open_in_graph(view, table, i, j, true);
                if (st.open) {
                    from[lattice_vertex_id(b, i, j + 1)] = 1;
                    if (st.vacuous && vacuous_flags)
                        (*vacuous_flags)[lattice_vertex_id(b, i, j + 1)] = 1;
                }
            }
        }
    }
    std::vector<PathEdge> path;
    if (from[lattice_vertex_id(b, b, b)] < 0) return path;
    int ci = b, cj = b;
    while (!(ci == 0 && cj == 0)) {
        int8_t via = from[lattice_vertex_id(b, ci, cj)];
        if (via == 0) {
            path.push_back({ci - 1, cj, false});
            --ci;
        } else {
            path.push_back({ci, cj - 1, true});
            --cj;
        }
    }
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace detail

// Verifies the construction the lattice stands in for: if an open lattice
// path runs corner to corner and the two-edge completion onto the top anchor
// exists, a temporal path (0,0) ~> (1/2,1/2) must exist in the graph. The
// chain walks the open path picking, per step, a vertex of the next box
// adjacent to the current one with stamp in T_m; ranges are ascending and
// disjoint, so the stamps increase strictly. Any gap between the certificate
// and temporal_reach is an implementation bug, reported via note.
inline CouplingReport coupling_check(const TemporalGraph& g, const BoxGrid& grid,
                                     const RangeTable& table) {
    if (g.points.n_anchor() < 2)
        throw std::invalid_argument("coupling_check: graph needs the two corner anchors");
    uint32_t a0 = static_cast<uint32_t>(g.points.n_random);
    uint32_t a1 = a0 + 1;
    auto p0 = g.points.point(a0);
    auto p1 = g.points.point(a1);
    if (p0[0] != 0.0 || p0[1] != 0.0 || p1[0] != 0.5 || p1[1] != 0.5)
        throw std::invalid_argument("coupling_check: anchors must be (0,0) and (1/2,1/2)");

    CouplingReport rep;
    GraphBoxView view = build_box_view(g, grid);
    int b = grid.b;
    std::vector<uint8_t> vacuous(static_cast<std::size_t>(b + 1) * (b + 1), 0);
    std::vector<detail::PathEdge> path = detail::graph_open_path(view, table, &vacuous);
    rep.reach_confirmed = temporal_reaches(g, a0, a1);
    if (path.empty()) return rep;  // hypothesis empty, implication vacuous
    rep.open_path_found = true;

    std::ostringstream dump;
    auto fail = [&](const std::string& why) {
        rep.implication_holds = false;
        dump << "coupling violation: " << why << "\n";
        dump << "  n=" << g.points.n_random << " r=" << g.r << " b=" << b << " A=" << table.A
             << "\n";
        for (const auto& e : path)
            dump << "  path edge (" << e.i << "," << e.j << ") -> ("
                 << (e.up ? e.i : e.i + 1) << "," << (e.up ? e.j + 1 : e.j) << ") m=" << e.i + e.j
                 << "\n";
        rep.note = dump.str();
    };

    // walk the chain along the open path
    uint32_t x = a0;
    double last_tau = -1.0;
    for (const auto& e : path) {
        int ti = e.up ? e.i : e.i + 1;
        int tj = e.up ? e.j + 1 : e.j;
        if (vacuous[lattice_vertex_id(b, ti, tj)]) ++rep.vacuous_on_path;
        const auto& dst = view.members[lattice_vertex_id(b, ti, tj)];
        uint32_t best = UINT32_MAX;
        double best_tau = 2.0;
        double tau = 0.0;
        for (uint32_t v : dst)
            if (view.edge_stamp(x, v, tau) && table.contains(e.i + e.j, tau) && tau < best_tau) {
                best = v;
                best_tau = tau;
            }
        if (best == UINT32_MAX) {
            std::ostringstream os;
            os << "open edge m=" << e.i + e.j << " gave no continuation from vertex " << x;
            fail(os.str());
            return rep;
        }
        if (best_tau <= last_tau) {
            fail("chain stamps failed to increase");
            return rep;
        }
        last_tau = best_tau;
        x = best;
    }
    if (rep.vacuous_on_path > 0) {
        // cannot happen on a path rooted in the anchor's box; see note
        fail("vacuously-open edge on a path rooted at the occupied corner box");
        return rep;
    }

    // completion: direct hop x -> a1 after last_tau, or two hops x -> y -> a1
    double tau1 = 0.0, tau2 = 0.0;
    if (view.edge_stamp(x, a1, tau1) && tau1 > last_tau) rep.completion_found = true;
    if (!rep.completion_found) {
        for (uint32_t y = 0; y < g.n() && !rep.completion_found; ++y)
            if (y != x && y != a1 && view.edge_stamp(x, y, tau1) && tau1 > last_tau &&
                view.edge_stamp(y, a1, tau2) && tau2 > tau1)
                rep.completion_found = true;
    }
    if (rep.completion_found && !rep.reach_confirmed)
        fail("explicit temporal witness exists but reachability query says no");
    return rep;
}

struct CouplingAggregate {
    int trials = 0;
    int with_open_path = 0;
    int with_completion = 0;
    int confirmed = 0;
    int violations = 0;
    std::string first_violation;
};

inline CouplingAggregate run_coupling_trials(std::size_t n, double C, double eps, double alpha,
                                             int trials, uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("run_coupling_trials: trials must be >= 1");
    double r = C * std::pow(static_cast<double>(n), -1.0 / 3.0);
    BoxGrid grid = build_box_grid(n, C);
    RangeTable table = build_range_table(n, eps, grid);
    Kernel kernel = alpha < 1.0 ? Kernel::alpha_hard(alpha) : Kernel::hard();
    CouplingAggregate agg;
    agg.trials = trials;
    for (int k = 0; k < trials; ++k) {
        TemporalGraph g = generate_graph(n, 2, r, kernel, mix64(seed, kStreamTrial, static_cast<uint64_t>(k)),
                                         {{0.0, 0.0}, {0.5, 0.5}});
        CouplingReport rep = coupling_check(g, grid, table);
        agg.with_open_path += rep.open_path_found;
        agg.with_completion += rep.completion_found;
        agg.confirmed += rep.reach_confirmed;
        if (!rep.implication_holds) {
            ++agg.violations;
            if (agg.first_violation.empty()) agg.first_violation = rep.note;
        }
    }
    return agg;
}

// Debug dump, one line per lattice edge: m i j i' j' p_e open
inline void dump_lattice(std::ostream& os, const PercolationInstance& inst) {
    if (inst.right.empty()) throw std::logic_error("dump_lattice: instance not sampled");
    int b = inst.b();
    for (int j = 0; j <= b; ++j)
        for (int i = 0; i < b; ++i)
            os << i + j << ' ' << i << ' ' << j << ' ' << i + 1 << ' ' << j << ' '
               << fmt_g17(inst.p_by_m[i + j]) << ' ' << (inst.right_open(i, j) ? 1 : 0) << '\n';
    for (int j = 0; j < b; ++j)
        for (int i = 0; i <= b; ++i)
            os << i + j << ' ' << i << ' ' << j << ' ' << i << ' ' << j + 1 << ' '
               << fmt_g17(inst.p_by_m[i + j]) << ' ' << (inst.up_open(i, j) ? 1 : 0) << '\n';
}

}  // namespace tgg
