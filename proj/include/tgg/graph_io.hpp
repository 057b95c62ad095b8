#pragma once

// Text format, one graph per file:
//   tgg 1 <d> <n> <r> <kernel-tag> <alpha> <beta> <seed>
//   n coordinate lines (d fields each)
//   m edge lines "u v tau", tau strictly ascending
// Reals are written with 17 significant digits so doubles round-trip exactly.
// Anchor flags are construction metadata and do not serialize.

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "tgg/graph.hpp"
#include "tgg/util.hpp"

namespace tgg {

inline void write_graph(const TemporalGraph& g, std::ostream& os) {
    os << "tgg 1 " << g.dim() << ' ' << g.n() << ' ' << fmt_g17(g.r) << ' ' << g.kernel.tag()
       << ' ' << fmt_g17(g.kernel.alpha) << ' ' << fmt_g17(g.kernel.beta) << ' ' << g.seed
       << '\n';
    for (std::size_t i = 0; i < g.n(); ++i) {
        auto p = g.points.point(i);
        for (int k = 0; k < g.dim(); ++k) os << (k ? " " : "") << fmt_g17(p[k]);
        os << '\n';
    }
    for (const auto& e : g.edges) os << e.u << ' ' << e.v << ' ' << fmt_g17(e.tau) << '\n';
}

inline void write_graph(const TemporalGraph& g, const std::string& path) {
    std::ofstream f(path, std::ios::binary);  // binary: keep LF endings everywhere
    if (!f) throw std::runtime_error("write_graph: cannot open " + path);
    write_graph(g, f);
    if (!f.good()) throw std::runtime_error("write_graph: write failed for " + path);
}

namespace detail {

[[noreturn]] inline void parse_fail(std::size_t line, const std::string& msg) {
    throw std::runtime_error("line " + std::to_string(line) + ": " + msg);
}

}  // namespace detail

inline TemporalGraph read_graph(std::istream& is) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(is, line)) detail::parse_fail(1, "missing header");
    ++lineno;
    std::istringstream h(line);
    std::string magic, tag;
    int version = 0, d = 0;
    long long n = -1;
    double r = 0, alpha = 0, beta = 0;
    uint64_t seed = 0;
    if (!(h >> magic >> version >> d >> n >> r >> tag >> alpha >> beta >> seed))
        detail::parse_fail(lineno, "malformed header");
    if (magic != "tgg") detail::parse_fail(lineno, "bad magic '" + magic + "'");
    if (version != 1) detail::parse_fail(lineno, "unsupported version " + std::to_string(version));
    if (d < 1) detail::parse_fail(lineno, "dimension must be >= 1");
    if (n < 0) detail::parse_fail(lineno, "negative vertex count");
    if (!(r > 0.0)) detail::parse_fail(lineno, "radius must be > 0");

    TemporalGraph g;
    if (tag == "hard")
        g.kernel.variant = KernelVariant::Hard;
    else if (tag == "alpha")
        g.kernel.variant = KernelVariant::AlphaHard;
    else if (tag == "soft")
        g.kernel.variant = KernelVariant::SoftTail;
    else
        detail::parse_fail(lineno, "unknown kernel tag '" + tag + "'");
    if (!(alpha > 0.0 && alpha <= 1.0)) detail::parse_fail(lineno, "alpha outside (0,1]");
    if (beta < 0.0 || (tag == "soft" && beta == 0.0)) detail::parse_fail(lineno, "bad beta");
    g.kernel.alpha = alpha;
    g.kernel.beta = beta;
    g.kernel.d = d;
    g.r = r;
    g.seed = seed;
    g.points.dim = d;
    g.points.n_random = static_cast<std::size_t>(n);
    g.points.coords.resize(static_cast<std::size_t>(n) * d);

    for (long long i = 0; i < n; ++i) {
        if (!std::getline(is, line)) detail::parse_fail(lineno + 1, "unexpected end of file in coordinates");
        ++lineno;
        std::istringstream cs(line);
        for (int k = 0; k < d; ++k) {
            double c;
            if (!(cs >> c)) detail::parse_fail(lineno, "expected " + std::to_string(d) + " coordinates");
            if (c < 0.0 || c >= 1.0) detail::parse_fail(lineno, "coordinate outside [0,1)");
            g.points.coords[static_cast<std::size_t>(i) * d + k] = c;
        }
        std::string extra;
        if (cs >> extra) detail::parse_fail(lineno, "trailing data after coordinates");
    }

    double prev_tau = -1.0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) detail::parse_fail(lineno, "blank line");
        std::istringstream es(line);
        long long u, v;
        double tau;
        if (!(es >> u >> v >> tau)) detail::parse_fail(lineno, "malformed edge line");
        std::string extra;
        if (es >> extra) detail::parse_fail(lineno, "trailing data after edge");
        if (u < 0 || v < 0 || u >= n || v >= n) detail::parse_fail(lineno, "edge endpoint out of range");
        if (u >= v) detail::parse_fail(lineno, "edge endpoints must satisfy u < v");
        if (!(tau >= 0.0 && tau <= 1.0)) detail::parse_fail(lineno, "tau outside [0,1]");
        if (!(tau > prev_tau)) detail::parse_fail(lineno, "time-stamps not strictly ascending");
        prev_tau = tau;
        g.edges.push_back({static_cast<uint32_t>(u), static_cast<uint32_t>(v), tau});
    }
    return g;
}

inline TemporalGraph read_graph(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("read_graph: cannot open " + path);
    try {
        return read_graph(f);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

}  // namespace tgg
