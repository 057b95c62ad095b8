#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "tgg/kernel.hpp"
#include "tgg/percolation.hpp"
#include "tgg/quadrature.hpp"
#include "tgg/util.hpp"

// Closed-form bounds evaluated numerically, for comparison against Monte
// Carlo estimates and exact counts elsewhere in the library.

namespace tgg {

struct BoundReport {
    std::string name;
    double value = 0.0;      // exp(log_value); +inf when that overflows
    double log_value = 0.0;  // always finite unless the bound is exactly 0
    bool overflowed = false;
};

// Expected number of ordered k-vertex tuples forming a monotone path:
// (n)_k / (k-1)! * p^{k-1}. Dominates the count of monotone paths on exactly
// k vertices (with equality in expectation for the hard kernel); paths with
// more edges are counted by their k-vertex prefixes when bounding existence
// probabilities, but their raw count can exceed this value.
inline double expected_Nk_upper_log(std::size_t n, std::size_t k, double p_edge) {
    if (k < 2 || k > n) throw std::invalid_argument("expected_Nk_upper: need 2 <= k <= n");
    if (p_edge < 0.0 || p_edge > 1.0)
        throw std::invalid_argument("expected_Nk_upper: p_edge must lie in [0,1]");
    if (p_edge == 0.0) return -std::numeric_limits<double>::infinity();
    return log_falling_factorial(static_cast<double>(n), static_cast<double>(k)) -
           std::lgamma(static_cast<double>(k)) +
           (static_cast<double>(k) - 1.0) * std::log(p_edge);
}

inline BoundReport expected_Nk_upper(std::size_t n, std::size_t k, double p_edge) {
    BoundReport rep;
    rep.name = "expected_path_tuples";
    rep.log_value = expected_Nk_upper_log(n, k, p_edge);
    rep.value = std::exp(rep.log_value);
    rep.overflowed = std::isinf(rep.value) && std::isfinite(rep.log_value);
    if (rep.overflowed) rep.value = std::numeric_limits<double>::infinity();
    return rep;
}

// Coefficient of k in the exponent below; vanishes at c = e^{-1/(d+1)}/3 and
// turns negative for smaller c (the disconnection side).
inline double nk_linear_coefficient(double c, int d) {
    if (!(c > 0.0)) throw std::invalid_argument("nk_linear_coefficient: c must be > 0");
    return 1.0 - (d + 1) * std::log(1.0 / (3.0 * c));
}

// Exponent of the asymptotic tuple-count bound at r = c n^{-1/(d+1)} and
// k = 1/(3r):
//   (k-1) log gamma2 + log n + (1 - (d+1) log(1/(3c))) k + (d+1) log(1/(3c)).
// gamma2 stands in for the unnamed kernel-volume constant; default 2^d V_d.
inline double expected_Nk_asymptotic_log(std::size_t n, std::size_t k, double r, double c, int d,
                                         double gamma2) {
    if (!(r > 0.0) || !(c > 0.0) || d < 1 || !(gamma2 > 0.0))
        throw std::invalid_argument("expected_Nk_asymptotic: need r, c, gamma2 > 0 and d >= 1");
    if (k < 2) throw std::invalid_argument("expected_Nk_asymptotic: need k >= 2");
    if (std::llround(1.0 / (3.0 * r)) != static_cast<long long>(k))
        throw std::invalid_argument("expected_Nk_asymptotic: k must equal round(1/(3r))");
    double L = std::log(1.0 / (3.0 * c));
    return (static_cast<double>(k) - 1.0) * std::log(gamma2) +
           std::log(static_cast<double>(n)) + (1.0 - (d + 1) * L) * static_cast<double>(k) +
           (d + 1) * L;
}

inline double default_gamma2(int d) { return std::pow(2.0, d) * unit_ball_volume(d); }

// n^2 * gamma_d * integral_{log n}^{inf} K(x) x^{d-1} dx with the canonical
// soft-tail envelope K(x) = beta x^{-d} exp(-(x+1) log(x+1)) and gamma_d the
// sphere-area constant; the integrand is beta x^{-1} exp(-(x+1) log(x+1))
// for every d. Bounds the expected number of edges longer than r log n.
inline double long_edge_bound(std::size_t n, double beta, int d) {
    if (n < 3) throw std::invalid_argument("long_edge_bound: need n >= 3");
    if (beta < 0.0) throw std::invalid_argument("long_edge_bound: beta must be >= 0");
    if (d < 1) throw std::invalid_argument("long_edge_bound: d must be >= 1");
    if (beta == 0.0) return 0.0;
    double L = std::log(static_cast<double>(n));
    auto f = [](double x) { return std::exp(-(x + 1.0) * std::log(x + 1.0)) / x; };
    // factor out f(L) so the quadrature works on an O(1)-scaled integrand;
    // beyond L+60 the superexponential decay leaves nothing representable
    double scale = f(L);
    double integral = scale * adaptive_simpson([&](double x) { return f(x) / scale; }, L, L + 60.0,
                                               1e-13);
    return static_cast<double>(n) * static_cast<double>(n) * unit_sphere_area(d) * beta * integral;
}

struct ContourReport {
    double sum = 0.0;
    double q = 0.0;            // per-edge closed probability (1 - alpha w)^{n_lo}
    double r2_width = 0.0;     // the nominal middle-region width used for q
    double ratio = 0.0;        // 3 sqrt(q), the geometric term ratio bound
    bool geometric_ok = false; // 3 sqrt(q) < 1
    double sufficiency_lhs = 0.0;  // 10 exp(-alpha (1-t) C^3 / (128 sqrt 2))
    bool sufficiency_ok = false;   // lhs < e^{-4}
    long long m_start = 0, m_end = 0;
};

// Peierls-style blocking-contour series sum_{m} 3^m q^{floor(m/2)} from
// m = 2A to the lattice edge count. q uses the nominal middle width (the
// printed closed form), which the sufficiency display was derived from; the
// sampling layer uses the exact tiling widths instead.
inline ContourReport contour_series(std::size_t n, double C, double t, double alpha, double eps) {
    if (!(alpha > 0.0 && alpha <= 1.0) || !(t > 0.0 && t < 1.0))
        throw std::invalid_argument("contour_series: need alpha in (0,1], t in (0,1)");
    BoxGrid grid = build_box_grid(n, C);
    RangeTable table = build_range_table(n, eps, grid);  // validates feasibility
    ContourReport rep;
    rep.r2_width = nominal_r2_width(n, eps, grid.b);
    double N = static_cast<double>(n) * grid.ell * grid.ell;
    long long n_lo = std::max<long long>(1, static_cast<long long>(std::floor((1.0 - t) * N)));
    double aw = std::min(1.0, alpha * rep.r2_width);
    rep.q = std::pow(1.0 - aw, static_cast<double>(n_lo));
    rep.ratio = 3.0 * std::sqrt(rep.q);
    rep.geometric_ok = rep.ratio < 1.0;
    rep.m_start = 2 * table.A;
    rep.m_end = static_cast<long long>(lattice_edge_count(grid.b));
    double log_q = rep.q > 0.0 ? std::log(rep.q) : 0.0;
    for (long long m = rep.m_start; m <= rep.m_end; ++m) {
        double term = rep.q == 0.0
                          ? 0.0
                          : std::exp(static_cast<double>(m) * std::log(3.0) +
                                     static_cast<double>(m / 2) * log_q);
        rep.sum += term;
        if (std::isinf(rep.sum)) break;                            // divergent, flag says so
        if (term < rep.sum * 1e-18 && m > rep.m_start + 4) break;  // converged tail
    }
    rep.sufficiency_lhs =
        10.0 * std::exp(-alpha * (1.0 - t) * C * C * C / (128.0 * std::sqrt(2.0)));
    rep.sufficiency_ok = rep.sufficiency_lhs < std::exp(-4.0);
    return rep;
}

// (16 n^{2/3} / C^2) exp(-(C t)^2 n^{1/3} / 8): union bound on the box-count
// concentration event failing.
inline double concentration_bound(std::size_t n, double C, double t) {
    if (!(C > 0.0) || t < 0.0)
        throw std::invalid_argument("concentration_bound: need C > 0, t >= 0");
    double n13 = std::pow(static_cast<double>(n), 1.0 / 3.0);
    return 16.0 * n13 * n13 / (C * C) * std::exp(-(C * t) * (C * t) * n13 / 8.0);
}

// (log n / (V_d n))^{1/d}: below this radius the plain geometric graph is
// disconnected with high probability; baseline marker for the density gap.
inline double simple_connectivity_radius(std::size_t n, int d) {
    if (n < 2 || d < 1)
        throw std::invalid_argument("simple_connectivity_radius: need n >= 2, d >= 1");
    double ln_n = std::log(static_cast<double>(n));
    return std::pow(ln_n / (unit_ball_volume(d) * static_cast<double>(n)), 1.0 / d);
}

}  // namespace tgg
