#pragma once

// Connection kernels K : [0,inf) -> [0,1]. A pair at torus distance s joins
// with probability K(s / r). Assumptions used throughout:
//   A1: K(x) >= alpha for x <= 1 (alpha in (0,1])
//   A2: K(x) <= beta * x^-d * exp(-(x+1) log(x+1)) for x > 1

#include <cmath>
#include <stdexcept>
#include <string>

#include "tgg/quadrature.hpp"

namespace tgg {

enum class KernelVariant { Hard, AlphaHard, SoftTail };

struct Kernel {
    KernelVariant variant = KernelVariant::Hard;
    double alpha = 1.0;  // A1 lower bound on [0,1]
    double beta = 0.0;   // A2 envelope scale (SoftTail only)
    int d = 2;           // ambient dimension, enters the SoftTail tail

    static Kernel hard() { return {KernelVariant::Hard, 1.0, 0.0, 2}; }
    static Kernel alpha_hard(double a) {
        if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("alpha must be in (0,1]");
        return {KernelVariant::AlphaHard, a, 0.0, 2};
    }
    // Canonical heavy-ish tail instance: 1 on [0,1], A2 envelope capped at 1 beyond.
    static Kernel soft_tail(double a, double b, int dim = 2) {
        if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("alpha must be in (0,1]");
        if (!(b > 0.0)) throw std::invalid_argument("beta must be positive");
        return {KernelVariant::SoftTail, a, b, dim};
    }

    std::string tag() const {
        switch (variant) {
            case KernelVariant::Hard: return "hard";
            case KernelVariant::AlphaHard: return "alpha";
            case KernelVariant::SoftTail: return "soft";
        }
        return "hard";
    }
};

inline double a2_envelope(double x, double beta, int d) {
    return beta * std::pow(x, -d) * std::exp(-(x + 1.0) * std::log(x + 1.0));
}

inline double kernel_eval(const Kernel& k, double x) {
    if (x < 0.0) throw std::invalid_argument("kernel_eval: negative argument");
    switch (k.variant) {
        case KernelVariant::Hard:
            return x <= 1.0 ? 1.0 : 0.0;
        case KernelVariant::AlphaHard:
            return x <= 1.0 ? k.alpha : 0.0;
        case KernelVariant::SoftTail:
            if (x <= 1.0) return 1.0;
            return std::min(1.0, a2_envelope(x, k.beta, k.d));
    }
    return 0.0;
}

// Smallest x_max with K(x) < eps for every x > x_max. Hard cutoffs give 1.
inline double truncation_radius(const Kernel& k, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("truncation_radius: eps must be > 0");
    if (k.variant != KernelVariant::SoftTail) return 1.0;
    if (a2_envelope(1.0, k.beta, k.d) < eps) return 1.0;
    double lo = 1.0, hi = 2.0;
    while (!(a2_envelope(hi, k.beta, k.d) < eps)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e9) throw std::runtime_error("truncation_radius: envelope does not drop below eps");
    }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (a2_envelope(mid, k.beta, k.d) < eps)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

inline double unit_ball_volume(int d) {
    return std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

inline double unit_sphere_area(int d) {  // surface of the (d-1)-sphere in R^d
    return d * unit_ball_volume(d);
}

// P(fixed pair adjacent) = integral of K(|y|/r) over the torus, y the uniform
// displacement. Radially exact inside the inradius 1/2; for d == 2 the annulus
// up to the circumradius sqrt(2)/2 uses the exact arc length inside the cell,
// so the d == 2 value is the full torus integral. For d >= 3 mass beyond the
// inradius is dropped (only the SoftTail has any, and it is envelope-tiny).
inline double edge_probability(const Kernel& k, double r, int d) {
    if (!(r > 0.0 && r <= 0.5)) throw std::invalid_argument("edge_probability: r outside (0, 1/2]");
    if (d < 1) throw std::invalid_argument("edge_probability: d must be >= 1");
    if (k.variant != KernelVariant::SoftTail)
        return k.alpha * unit_ball_volume(d) * std::pow(r, d);

    double x_max = truncation_radius(k, 1e-300);
    double area = unit_sphere_area(d);
    double cap = std::min(x_max, 0.5 / r);
    auto radial = [&](double x) { return kernel_eval(k, x) * std::pow(x, d - 1); };
    double p = area * std::pow(r, d) * adaptive_simpson(radial, 0.0, cap, 1e-14);
    if (d == 2 && x_max * r > 0.5) {
        double hi = std::min(x_max, std::sqrt(2.0) / (2.0 * r));
        auto annulus = [&](double x) {
            double s = x * r;  // distance; arc of radius s inside [-1/2,1/2]^2
            double ang = 2.0 * M_PI - 8.0 * std::acos(std::min(1.0, 0.5 / s));
            return kernel_eval(k, x) * ang * x;
        };
        p += r * r * adaptive_simpson(annulus, 0.5 / r, hi, 1e-14);
    }
    return p;
}

}  // namespace tgg
