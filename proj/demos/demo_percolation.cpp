// Build the box-lattice percolation for a medium instance, print its
// parameters, sample a few configurations, and report how often an open
// up-right path crosses the whole quadrant.

#include <iostream>

#include "tgg/percolation.hpp"

int main() {
    tgg::PercParams params;
    params.n = 1'000'000;
    params.C = 8.0;
    params.eps = 0.2;
    params.t = 0.01;
    params.alpha = 1.0;

    tgg::PercolationInstance inst = tgg::build_percolation(params);
    std::cout << "lattice b=" << inst.b() << " boxes_per_axis=" << inst.grid.boxes_per_axis()
              << " edges=" << tgg::lattice_edge_count(inst.b()) << '\n';
    std::cout << "expected points per box N=" << inst.N << "  occupancy band [" << inst.n_lo
              << ", " << inst.n_hi << "]\n";
    std::cout << "open probabilities: first=" << inst.p_by_m.front() << " middle="
              << inst.p_by_m[inst.table.m_count() / 2] << " last=" << inst.p_by_m.back() << '\n';

    std::size_t trials = 200, crossings = 0;
    for (std::size_t k = 0; k < trials; ++k) {
        tgg::sample_open(inst, tgg::mix64(1, tgg::kStreamTrial, k));
        if (tgg::end_to_end(inst)) ++crossings;
    }
    std::cout << "end-to-end open path in " << crossings << "/" << trials << " samples\n";
    return 0;
}
