// Evaluate the closed-form estimates for a few instance sizes so the
// numbers can be eyeballed next to simulation output.

#include <iostream>

#include "tgg/bounds.hpp"
#include "tgg/kernel.hpp"

int main() {
    std::cout << "simple connectivity radius, d=2:\n";
    for (double n : {1e3, 1e4, 1e5, 1e6})
        std::cout << "  n=" << n << "  r=" << tgg::simple_connectivity_radius(n, 2) << '\n';

    std::cout << "expected increasing-path tuples at n=30, r=0.1 (hard kernel):\n";
    double p = tgg::edge_probability(tgg::Kernel::hard(), 0.1, 2);
    for (std::size_t k : {2, 3, 4, 5}) {
        tgg::BoundReport rep = tgg::expected_Nk_upper(30, k, p);
        std::cout << "  k=" << k << "  bound=" << rep.value << '\n';
    }

    std::cout << "long-edge union bound, beta=1, d=2:\n";
    for (double n : {1e3, 1e4, 1e5, 1e6})
        std::cout << "  n=" << n << "  bound=" << tgg::long_edge_bound(n, 1.0, 2) << '\n';

    std::cout << "contour series at n=1e6, t=0.01, alpha=1, eps=0.2:\n";
    for (double C : {4.0, 8.0, 11.0}) {
        tgg::ContourReport rep = tgg::contour_series(1e6, C, 0.01, 1.0, 0.2);
        std::cout << "  C=" << C << "  sum=" << rep.sum << "  geometric_ok=" << rep.geometric_ok
                  << "  sufficiency_ok=" << rep.sufficiency_ok << '\n';
    }
    return 0;
}
