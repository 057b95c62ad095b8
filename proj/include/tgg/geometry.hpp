#pragma once

// Points live on the unit torus [0,1)^d with the wrap-around metric.

#include <cassert>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "tgg/rng.hpp"

namespace tgg {

// Flat coordinate storage: point i occupies coords[i*dim .. i*dim+dim).
// Anchors are deterministic extra points appended after the n random ones
// (used to pin named locations like the origin); is_anchor tells them apart.
struct PointSet {
    int dim = 2;
    std::vector<double> coords;
    std::size_t n_random = 0;  // first n_random points are the sampled ones

    std::size_t size() const { return dim == 0 ? 0 : coords.size() / dim; }
    std::span<const double> point(std::size_t i) const {
        return {coords.data() + i * dim, static_cast<std::size_t>(dim)};
    }
    bool is_anchor(std::size_t i) const { return i >= n_random; }
    std::size_t n_anchor() const { return size() - n_random; }
};

inline double torus_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("torus_distance: dimension mismatch");
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        double d = std::fabs(a[k] - b[k]);
        if (d > 0.5) d = 1.0 - d;
        s += d * d;
    }
    return std::sqrt(s);
}

inline double torus_distance(const PointSet& ps, std::size_t i, std::size_t j) {
    return torus_distance(ps.point(i), ps.point(j));
}

// n uniform points on [0,1)^d, keyed per (seed, index, axis) so the result is
// independent of evaluation order. Anchor coordinates are appended verbatim.
inline PointSet sample_points(std::size_t n, int d, uint64_t seed,
                              const std::vector<std::vector<double>>& anchors = {}) {
    if (d < 2) throw std::invalid_argument("sample_points: d must be >= 2");
    PointSet ps;
    ps.dim = d;
    ps.n_random = n;
    ps.coords.resize((n + anchors.size()) * d);
    for (std::size_t i = 0; i < n; ++i)
        for (int k = 0; k < d; ++k)
            ps.coords[i * d + k] = u01(mix64(seed, kStreamPoint, i, static_cast<uint64_t>(k)));
    for (std::size_t a = 0; a < anchors.size(); ++a) {
        if (anchors[a].size() != static_cast<std::size_t>(d))
            throw std::invalid_argument("sample_points: anchor dimension mismatch");
        for (int k = 0; k < d; ++k) {
            double c = anchors[a][k];
            if (c < 0.0 || c >= 1.0)
                throw std::invalid_argument("sample_points: anchor coordinate outside [0,1)");
            ps.coords[(n + a) * d + k] = c;
        }
    }
    return ps;
}

}  // namespace tgg
