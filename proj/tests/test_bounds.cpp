#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "tgg/bounds.hpp"
#include "tgg/generate.hpp"
#include "tgg/temporal.hpp"

using namespace tgg;

TEST_CASE("expected path-tuple bound: closed forms") {
    // k=2 collapses to n(n-1)p, the ordered adjacent-pair mean
    BoundReport two = expected_Nk_upper(100, 2, 0.1);
    REQUIRE(two.value == Catch::Approx(990.0).epsilon(1e-10));
    BoundReport three = expected_Nk_upper(100, 3, 0.1);
    REQUIRE(three.value == Catch::Approx(100.0 * 99.0 * 98.0 / 2.0 * 0.01).epsilon(1e-10));

    double p = edge_probability(Kernel::hard(), 0.1, 2);  // pi/100
    REQUIRE(expected_Nk_upper(30, 3, p).value == Catch::Approx(12.021178160526839).epsilon(1e-10));
    REQUIRE(expected_Nk_upper(30, 4, p).value == Catch::Approx(3.3989080496944672).epsilon(1e-10));

    BoundReport zero = expected_Nk_upper(30, 3, 0.0);
    REQUIRE(zero.value == 0.0);
    REQUIRE(!zero.overflowed);
    REQUIRE(std::isinf(zero.log_value));

    BoundReport huge = expected_Nk_upper(1000000, 200, 0.9);
    REQUIRE(huge.overflowed);
    REQUIRE(std::isinf(huge.value));
    REQUIRE(std::isfinite(huge.log_value));
    REQUIRE(huge.log_value > 700.0);
    REQUIRE(huge.name == "expected_path_tuples");

    REQUIRE_THROWS_AS(expected_Nk_upper(30, 1, 0.1), std::invalid_argument);
    REQUIRE_THROWS_AS(expected_Nk_upper(30, 31, 0.1), std::invalid_argument);
    REQUIRE_THROWS_AS(expected_Nk_upper(30, 3, 1.5), std::invalid_argument);
}

TEST_CASE("tuple bound against Monte Carlo path counts") {
    // hard kernel: the k-vertex tuple count has mean exactly (n)_k p^{k-1}/(k-1)!
    const std::size_t n = 30;
    const double r = 0.1;
    const double p = edge_probability(Kernel::hard(), r, 2);
    const int trials = 1000;
    double s3 = 0, ss3 = 0, s4 = 0, ss4 = 0, smin3 = 0, ssmin3 = 0;
    for (int i = 0; i < trials; ++i) {
        TemporalGraph g = generate_graph(n, 2, r, Kernel::hard(), mix64(777, kStreamTrial, i));
        double c3 = static_cast<double>(count_monotone_paths(g, 3));
        double c4 = static_cast<double>(count_monotone_paths(g, 4));
        double m3 = static_cast<double>(count_monotone_paths_min_edges(g, 3));
        s3 += c3;
        ss3 += c3 * c3;
        s4 += c4;
        ss4 += c4 * c4;
        smin3 += m3;
        ssmin3 += m3 * m3;
    }
    auto mean_se = [&](double s, double ss) {
        double mean = s / trials;
        double var = (ss - s * s / trials) / (trials - 1);
        return std::make_pair(mean, std::sqrt(var / trials));
    };
    double b3 = expected_Nk_upper(n, 3, p).value;
    double b4 = expected_Nk_upper(n, 4, p).value;
    auto [m3, se3] = mean_se(s3, ss3);
    auto [m4, se4] = mean_se(s4, ss4);
    auto [mm3, semm3] = mean_se(smin3, ssmin3);
    INFO("exact-3 mean " << m3 << " +- " << se3 << " vs bound " << b3);
    REQUIRE(std::fabs(m3 - b3) <= 3.0 * se3);  // equality in expectation
    INFO("exact-4 mean " << m4 << " +- " << se4 << " vs bound " << b4);
    REQUIRE(std::fabs(m4 - b4) <= 3.0 * se4);
    // counting every path of >= 2 edges overshoots the 3-vertex tuple bound:
    // the two counts genuinely differ and only the tuple count is bounded
    INFO("min-3 mean " << mm3 << " +- " << semm3 << " vs bound " << b3);
    REQUIRE(mm3 > b3 + 3.0 * semm3);
}

TEST_CASE("linear coefficient of the asymptotic exponent") {
    double cstar = std::exp(-1.0 / 3.0) / 3.0;
    REQUIRE(nk_linear_coefficient(cstar, 2) == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(nk_linear_coefficient(cstar * 1.01, 2) > 0.0);
    REQUIRE(nk_linear_coefficient(cstar * 0.99, 2) < 0.0);
    REQUIRE(nk_linear_coefficient(std::exp(-0.25) / 3.0, 3) == Catch::Approx(0.0).margin(1e-12));
    REQUIRE_THROWS_AS(nk_linear_coefficient(0.0, 2), std::invalid_argument);
}

TEST_CASE("asymptotic exponent: algebraic identity and regimes") {
    std::size_t n = 1000000;
    std::size_t k = 140;
    double r = 1.0 / (3.0 * 140.0);
    double c = r * std::pow(static_cast<double>(n), 1.0 / 3.0);
    double g2 = default_gamma2(2);
    double got = expected_Nk_asymptotic_log(n, k, r, c, 2, g2);
    // same exponent, rearranged: k + (k-1)(d+1)log(3c) + (k-1)log g2 + log n
    double alt = static_cast<double>(k) + (k - 1.0) * 3.0 * std::log(3.0 * c) +
                 (k - 1.0) * std::log(g2) + std::log(static_cast<double>(n));
    REQUIRE(got == Catch::Approx(alt).epsilon(1e-9));

    // deep subcritical: tiny c drives the exponent far negative
    std::size_t kk = 3333;
    double rr = 1.0 / (3.0 * 3333.0);
    double cc = rr * 100.0;
    REQUIRE(expected_Nk_asymptotic_log(n, kk, rr, cc, 2, g2) < -1000.0);

    REQUIRE(default_gamma2(2) == Catch::Approx(4.0 * 3.14159265358979324).epsilon(1e-12));
    REQUIRE_THROWS_AS(expected_Nk_asymptotic_log(n, 100, 0.01, 1.0, 2, g2),
                      std::invalid_argument);  // k != round(1/(3r))
    REQUIRE_THROWS_AS(expected_Nk_asymptotic_log(n, 140, r, -1.0, 2, g2), std::invalid_argument);
}

TEST_CASE("long-edge tail bound at pinned sizes") {
    REQUIRE(long_edge_bound(1000, 1.0, 2) == Catch::Approx(2.219131982448e-02).epsilon(1e-8));
    REQUIRE(long_edge_bound(10000, 1.0, 2) == Catch::Approx(9.832495046491e-04).epsilon(1e-8));
    REQUIRE(long_edge_bound(20000, 1.0, 2) == Catch::Approx(3.513475491935e-04).epsilon(1e-8));
    REQUIRE(long_edge_bound(100000, 1.0, 2) == Catch::Approx(2.789654856150e-05).epsilon(1e-8));
    REQUIRE(long_edge_bound(1000000, 1.0, 2) == Catch::Approx(5.433452722938e-07).epsilon(1e-8));
    // vanishing only kicks in past n ~ 1e4: the n=1e3 value is far above 1e-3
    REQUIRE(long_edge_bound(1000, 1.0, 2) > 1e-3);
    REQUIRE(long_edge_bound(10000, 1.0, 2) < 1e-3);
    double prev = long_edge_bound(1000, 1.0, 2);
    for (std::size_t n : {10000ull, 100000ull, 1000000ull}) {
        double cur = long_edge_bound(n, 1.0, 2);
        REQUIRE(cur < prev);
        prev = cur;
    }
    REQUIRE(long_edge_bound(1000, 0.0, 2) == 0.0);
    REQUIRE(long_edge_bound(1000, 2.0, 2) == Catch::Approx(2.0 * long_edge_bound(1000, 1.0, 2)).epsilon(1e-12));
    REQUIRE_THROWS_AS(long_edge_bound(2, 1.0, 2), std::invalid_argument);
    REQUIRE_THROWS_AS(long_edge_bound(1000, -1.0, 2), std::invalid_argument);
    REQUIRE_THROWS_AS(long_edge_bound(1000, 1.0, 0), std::invalid_argument);
}

TEST_CASE("blocking-contour series at the pinned point") {
    ContourReport rep = contour_series(1000000, 8.0, 0.01, 1.0, 0.2);
    REQUIRE(rep.r2_width == Catch::Approx(0.0136452061304).epsilon(1e-9));
    REQUIRE(rep.q == Catch::Approx(0.0623301617126).epsilon(1e-9));
    REQUIRE(rep.ratio == Catch::Approx(0.748980).epsilon(1e-5));
    REQUIRE(rep.geometric_ok);
    REQUIRE(rep.m_start == 8);
    REQUIRE(rep.m_end == 2380);
    REQUIRE(rep.sum == Catch::Approx(0.902257053173).epsilon(1e-9));
    // the displayed sufficiency inequality fails at C=8 and holds at C=11
    REQUIRE(rep.sufficiency_lhs == Catch::Approx(0.608014).epsilon(1e-4));
    REQUIRE(!rep.sufficiency_ok);
    ContourReport c11 = contour_series(1000000, 11.0, 0.01, 1.0, 0.2);
    REQUIRE(c11.sufficiency_lhs == Catch::Approx(6.8968e-3).epsilon(1e-4));
    REQUIRE(c11.sufficiency_ok);
    REQUIRE(c11.geometric_ok);
    REQUIRE(c11.sum < rep.sum);
}

TEST_CASE("contour series flags divergence in the subcritical regime") {
    ContourReport rep = contour_series(1000000, 1.0, 0.01, 1.0, 0.2);
    REQUIRE(!rep.geometric_ok);
    REQUIRE(rep.ratio > 1.0);
    REQUIRE(std::isinf(rep.sum));
    REQUIRE_THROWS_AS(contour_series(1000000, 8.0, 0.0, 1.0, 0.2), std::invalid_argument);
    REQUIRE_THROWS_AS(contour_series(1000000, 8.0, 0.01, 2.0, 0.2), std::invalid_argument);
}

TEST_CASE("concentration bound closed form") {
    REQUIRE(concentration_bound(1000000, 8.0, 0.0) == Catch::Approx(2500.0).epsilon(1e-12));
    double prev = concentration_bound(1000000, 8.0, 0.0);
    for (double t : {0.1, 0.2, 0.3, 0.5, 0.9}) {
        double cur = concentration_bound(1000000, 8.0, t);
        REQUIRE(cur < prev);
        prev = cur;
    }
    // exponent is (Ct)^2 n^{1/3} / 8 = 16 * 100 / 8 = 200 here
    double half = concentration_bound(1000000, 8.0, 0.5);
    REQUIRE(half < 1e-80);
    REQUIRE(half > 0.0);
    REQUIRE(half == Catch::Approx(2500.0 * std::exp(-200.0)).epsilon(1e-10));
    REQUIRE_THROWS_AS(concentration_bound(1000000, 0.0, 0.5), std::invalid_argument);
    REQUIRE_THROWS_AS(concentration_bound(1000000, 8.0, -0.1), std::invalid_argument);
}

TEST_CASE("simple-connectivity radius marker") {
    double r = simple_connectivity_radius(10000, 2);
    REQUIRE(r == Catch::Approx(0.017122).epsilon(1e-4));
    // defining identity: V_d n r^d = log n
    REQUIRE(unit_ball_volume(2) * 10000.0 * r * r == Catch::Approx(std::log(10000.0)).epsilon(1e-12));
    double r3 = simple_connectivity_radius(1000, 3);
    REQUIRE(unit_ball_volume(3) * 1000.0 * r3 * r3 * r3 == Catch::Approx(std::log(1000.0)).epsilon(1e-12));
    // higher dimension pushes the threshold radius up at fixed n
    double prev = 0.0;
    for (int d = 2; d <= 12; ++d) {
        double cur = simple_connectivity_radius(1000000, d);
        REQUIRE(cur > prev);
        REQUIRE(cur < 1.0);
        prev = cur;
    }
    REQUIRE_THROWS_AS(simple_connectivity_radius(1, 2), std::invalid_argument);
    REQUIRE_THROWS_AS(simple_connectivity_radius(10000, 0), std::invalid_argument);
}

TEST_CASE("tuple bound for pairs matches the generator's edge count") {
    const double r = 0.1;
    const double p = edge_probability(Kernel::hard(), r, 2);
    const int trials = 200;
    double s = 0, ss = 0;
    for (int i = 0; i < trials; ++i) {
        TemporalGraph g = generate_graph(100, 2, r, Kernel::hard(), mix64(888, kStreamTrial, i));
        double c = 2.0 * static_cast<double>(g.m());  // ordered pairs
        s += c;
        ss += c * c;
    }
    double mean = s / trials;
    double se = std::sqrt((ss - s * s / trials) / (trials - 1) / trials);
    double bound = expected_Nk_upper(100, 2, p).value;
    REQUIRE(std::fabs(mean - bound) <= 3.0 * se);
}
