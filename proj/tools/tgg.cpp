// Command-line front end: generate/analyze single graphs, run connectivity
// sweeps, sample the box percolation, evaluate the closed-form bounds, and
// run the lattice-vs-graph coupling trials.
//
// Exit codes: 0 success, 1 usage error, 2 infeasible parameters or bad
// input, 3 internal assertion failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "tgg/bounds.hpp"
#include "tgg/experiments.hpp"
#include "tgg/generate.hpp"
#include "tgg/graph_io.hpp"
#include "tgg/percolation.hpp"
#include "tgg/temporal.hpp"

namespace {

struct CouplingViolation : std::logic_error {
    using std::logic_error::logic_error;
};

void print_wilson(std::ostream& os, const char* name, double frac, const tgg::WilsonCi& ci) {
    os << name << '=' << tgg::fmt_g17(frac) << " ci=[" << tgg::fmt_g17(ci.lo) << ','
       << tgg::fmt_g17(ci.hi) << "]\n";
}

int run(int argc, char** argv) {
    CLI::App app{"temporal random geometric graph laboratory"};
    app.require_subcommand(1);

    tgg::ExperimentConfig cfg;
    std::string config_path;
    std::string graph_path;
    std::string out_file;
    std::string dump_file;
    std::size_t n_single = 0;
    std::size_t source = 0;
    std::uint64_t budget = 10'000'000;
    std::size_t k_vertices = 3;
    bool exact_path = false;

    // shared option wiring; flags override whatever the config file set
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key=value config file; flags override it");
        sub->add_option("--seed", cfg.seed, "master seed (required, no wall-clock default)")
            ->each([&](const std::string&) { cfg.seed_set = true; });
        sub->add_option("--d", cfg.d, "dimension");
        sub->add_option("--kernel", cfg.kernel, "hard | alpha:<a> | soft:<a>,<b>");
        sub->add_option("--trials", cfg.trials, "Monte Carlo trials");
        sub->add_option("--workers", cfg.workers, "parallel workers");
        sub->add_option("--out", cfg.out_dir, "output directory");
    };

    CLI::App* gen = app.add_subcommand("generate", "sample one temporal graph and write it");
    gen->add_option("--n", n_single, "number of random points")->required();
    gen->add_option("--r", cfg.r, "connection radius")->required();
    gen->add_option("--out-file", out_file, "output path (default stdout)");
    add_common(gen);

    CLI::App* ana = app.add_subcommand("analyze", "read a graph file and report its structure");
    ana->add_option("graph-file", graph_path, "graph file to read")->required();
    ana->add_option("--source", source, "source vertex for the reachability report");
    ana->add_flag("--exact-path", exact_path, "also run the exact longest-path search");
    ana->add_option("--budget", budget, "node budget for the exact search");

    CLI::App* sweep = app.add_subcommand("sweep", "connectivity fractions over an (n, C) grid");
    sweep->add_option("--n", cfg.n_list, "n values")->delimiter(',');
    sweep->add_option("--c-grid", cfg.c_grid, "C grid")->delimiter(',');
    add_common(sweep);

    CLI::App* perc = app.add_subcommand("percolate", "sample the box lattice percolation");
    perc->add_option("--n", n_single, "point count the lattice is built for")->required();
    perc->add_option("--C", cfg.C, "radius constant");
    perc->add_option("--eps", cfg.eps, "range exponent, in (0, 1/3)");
    perc->add_option("--t", cfg.t, "concentration tolerance");
    perc->add_option("--alpha", cfg.alpha, "kernel floor");
    perc->add_option("--dump", dump_file, "write per-edge dump of the first sample");
    add_common(perc);

    CLI::App* bnd = app.add_subcommand("bounds", "evaluate the closed-form bounds");
    bnd->add_option("--n", n_single, "point count")->required();
    bnd->add_option("--r", cfg.r, "connection radius for edge-probability bounds");
    bnd->add_option("--k", k_vertices, "path vertex count for the tuple bound");
    bnd->add_option("--C", cfg.C, "radius constant");
    bnd->add_option("--eps", cfg.eps, "range exponent");
    bnd->add_option("--t", cfg.t, "concentration tolerance");
    bnd->add_option("--alpha", cfg.alpha, "kernel floor");
    bnd->add_option("--beta", cfg.beta, "soft-tail scale");
    bnd->add_option("--d", cfg.d, "dimension");
    bnd->add_option("--kernel", cfg.kernel, "hard | alpha:<a> | soft:<a>,<b>");

    CLI::App* cpl = app.add_subcommand("couple", "lattice-vs-graph coupling trials");
    cpl->add_option("--n", n_single, "number of random points")->required();
    cpl->add_option("--C", cfg.C, "radius constant");
    cpl->add_option("--eps", cfg.eps, "range exponent");
    cpl->add_option("--alpha", cfg.alpha, "kernel floor");
    add_common(cpl);

    // load the config file (if any) before flags are applied
    app.preparse_callback([&](std::size_t) {
        for (int i = 1; i < argc; ++i) {
            std::string arg = argv[i];
            std::string path;
            if (arg == "--config" && i + 1 < argc)
                path = argv[i + 1];
            else if (arg.rfind("--config=", 0) == 0)
                path = arg.substr(9);
            if (!path.empty()) tgg::apply_kv(cfg, tgg::parse_kv_file(path));
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (gen->parsed()) {
        if (!cfg.seed_set) throw CLI::ValidationError("--seed is required");
        tgg::Kernel kernel = tgg::parse_kernel_spec(cfg.kernel, cfg.d);
        tgg::TemporalGraph g = tgg::generate_graph(n_single, cfg.d, cfg.r, kernel, cfg.seed);
        if (out_file.empty()) {
            tgg::write_graph(g, std::cout);
        } else {
            tgg::write_graph(g, out_file);
            std::cerr << "wrote " << out_file << " (" << g.m() << " edges)\n";
        }
        return 0;
    }

    if (ana->parsed()) {
        tgg::TemporalGraph g = tgg::read_graph(graph_path);
        std::cout << "n=" << g.n() << "\nd=" << g.dim() << "\nm=" << g.m() << "\nr="
                  << tgg::fmt_g17(g.r) << "\nkernel=" << g.kernel.tag() << "\nseed=" << g.seed
                  << '\n';
        std::cout << "simple_connected=" << (tgg::is_simply_connected(g) ? 1 : 0) << '\n';
        tgg::MultiReach mr = tgg::multi_reach(g);
        std::cout << "temporally_connected=" << (mr.complete ? 1 : 0) << '\n';
        std::cout << "temporal_sources=" << mr.count_sources() << '\n';
        std::cout << "longest_walk=" << tgg::longest_increasing_walk(g) << '\n';
        if (source >= g.n()) throw std::invalid_argument("--source out of range");
        tgg::ReachabilityResult res = tgg::temporal_reach(g, static_cast<uint32_t>(source));
        std::size_t reached = 0;
        int32_t hop_max = 0;
        for (std::size_t v = 0; v < g.n(); ++v)
            if (res.reachable[v]) {
                ++reached;
                hop_max = std::max(hop_max, res.hops[v]);
            }
        std::cout << "reach_from_" << source << "=" << reached << '\n';
        std::cout << "reach_hops_max=" << hop_max << '\n';
        if (exact_path) {
            tgg::LongestPathResult lp = tgg::longest_increasing_path_exact(g, budget);
            std::cout << "longest_path_exact=" << lp.length << '\n';
        }
        return 0;
    }

    if (sweep->parsed()) {
        if (!cfg.seed_set) throw CLI::ValidationError("--seed is required");
        if (cfg.n_list.empty()) throw CLI::ValidationError("--n is required for sweep");
        tgg::validate(cfg);
        tgg::SweepSpec spec;
        spec.n_list = cfg.n_list;
        spec.c_grid = cfg.c_grid;
        spec.d = cfg.d;
        spec.kernel = tgg::parse_kernel_spec(cfg.kernel, cfg.d);
        spec.trials = cfg.trials;
        spec.seed = cfg.seed;
        spec.workers = cfg.workers;
        tgg::SweepResult result = tgg::run_sweep(spec);
        std::filesystem::create_directories(cfg.out_dir);
        std::string csv = cfg.out_dir + "/sweep.csv";
        std::string svg = cfg.out_dir + "/sweep.svg";
        tgg::emit_csv(result, csv);
        tgg::emit_svg_plot(result, svg);
        std::cout << "wrote " << csv << " and " << svg << '\n';
        std::vector<tgg::ThresholdFit> fits;
        for (std::size_t n : spec.n_list) {
            try {
                tgg::ThresholdFit fit = tgg::fit_threshold(result, n);
                fits.push_back(fit);
                std::cout << "n=" << n << " C50=" << tgg::fmt_g17(fit.C50)
                          << " r50=" << tgg::fmt_g17(fit.r50) << " ci=["
                          << tgg::fmt_g17(fit.ci_lo) << ',' << tgg::fmt_g17(fit.ci_hi) << "]"
                          << (fit.degenerate ? " degenerate" : "") << '\n';
            } catch (const std::invalid_argument& e) {
                std::cout << "n=" << n << " fit_skipped: " << e.what() << '\n';
            }
        }
        if (fits.size() >= 3) {
            std::size_t lo = fits.front().n, hi = fits.front().n;
            for (const auto& f : fits) {
                lo = std::min(lo, f.n);
                hi = std::max(hi, f.n);
            }
            if (hi >= 4 * lo) {
                tgg::ScalingReport rep = tgg::scaling_check(fits, cfg.d);
                std::cout << "slope=" << tgg::fmt_g17(rep.slope) << " expected="
                          << tgg::fmt_g17(rep.expected_slope) << " band=["
                          << tgg::fmt_g17(rep.band_lo) << ',' << tgg::fmt_g17(rep.band_hi)
                          << "]\nc50_ratio=" << tgg::fmt_g17(rep.c50_ratio) << "\nscaling_pass="
                          << (rep.pass ? 1 : 0) << '\n';
            }
        }
        return 0;
    }

    if (perc->parsed()) {
        if (!cfg.seed_set) throw CLI::ValidationError("--seed is required");
        tgg::PercParams params{n_single, cfg.C, cfg.eps, cfg.t, cfg.alpha};
        tgg::PercolationInstance inst = tgg::build_percolation(params);
        std::cout << "n=" << params.n << " C=" << tgg::fmt_g17(params.C)
                  << " eps=" << tgg::fmt_g17(params.eps) << " t=" << tgg::fmt_g17(params.t)
                  << " alpha=" << tgg::fmt_g17(params.alpha) << '\n';
        std::cout << "b=" << inst.b() << " A=" << inst.table.A << " ell="
                  << tgg::fmt_g17(inst.grid.ell) << " N=" << tgg::fmt_g17(inst.N)
                  << " n_lo=" << inst.n_lo << " n_hi=" << inst.n_hi << '\n';
        std::cout << "p_first=" << tgg::fmt_g17(inst.p_by_m.front()) << " p_mid="
                  << tgg::fmt_g17(inst.p_by_m[inst.table.m_count() / 2]) << " p_last="
                  << tgg::fmt_g17(inst.p_by_m.back()) << '\n';
        if (!dump_file.empty()) {
            tgg::sample_open(inst, tgg::mix64(cfg.seed, tgg::kStreamTrial, 0));
            std::ofstream os(dump_file, std::ios::binary);
            if (!os) throw std::runtime_error("cannot open " + dump_file);
            tgg::dump_lattice(os, inst);
            std::cerr << "wrote " << dump_file << '\n';
        }
        tgg::LemmaEstimates est = tgg::estimate_lemma_events(params, cfg.trials, cfg.seed);
        std::cout << "trials=" << est.trials << '\n';
        print_wilson(std::cout, "reach_first_diagonal", est.p_first_diagonal,
                     est.ci_first_diagonal);
        print_wilson(std::cout, "cross_middle", est.p_cross_middle, est.ci_cross_middle);
        print_wilson(std::cout, "end_to_end", est.p_end_to_end, est.ci_end_to_end);
        return 0;
    }

    if (bnd->parsed()) {
        std::cout << "simple_connectivity_radius="
                  << tgg::fmt_g17(tgg::simple_connectivity_radius(n_single, cfg.d)) << '\n';
        std::cout << "concentration_bound="
                  << tgg::fmt_g17(tgg::concentration_bound(n_single, cfg.C, cfg.t)) << '\n';
        std::cout << "long_edge_bound="
                  << tgg::fmt_g17(tgg::long_edge_bound(n_single, cfg.beta, cfg.d)) << '\n';
        if (cfg.r > 0.0) {
            tgg::Kernel kernel = tgg::parse_kernel_spec(cfg.kernel, cfg.d);
            double p = tgg::edge_probability(kernel, cfg.r, cfg.d);
            std::cout << "edge_probability=" << tgg::fmt_g17(p) << '\n';
            tgg::BoundReport rep = tgg::expected_Nk_upper(n_single, k_vertices, p);
            std::cout << "expected_path_tuples_k" << k_vertices << '=' << tgg::fmt_g17(rep.value)
                      << " log=" << tgg::fmt_g17(rep.log_value)
                      << (rep.overflowed ? " overflowed" : "") << '\n';
        }
        try {
            tgg::ContourReport rep = tgg::contour_series(n_single, cfg.C, cfg.t, cfg.alpha, cfg.eps);
            std::cout << "contour_sum=" << tgg::fmt_g17(rep.sum) << " q=" << tgg::fmt_g17(rep.q)
                      << " geometric_ok=" << (rep.geometric_ok ? 1 : 0)
                      << " sufficiency_lhs=" << tgg::fmt_g17(rep.sufficiency_lhs)
                      << " sufficiency_ok=" << (rep.sufficiency_ok ? 1 : 0) << '\n';
        } catch (const std::invalid_argument& e) {
            std::cout << "contour_skipped: " << e.what() << '\n';
        }
        return 0;
    }

    if (cpl->parsed()) {
        if (!cfg.seed_set) throw CLI::ValidationError("--seed is required");
        tgg::CouplingAggregate agg =
            tgg::run_coupling_trials(n_single, cfg.C, cfg.eps, cfg.alpha, cfg.trials, cfg.seed);
        std::cout << "trials=" << agg.trials << "\nwith_open_path=" << agg.with_open_path
                  << "\nwith_completion=" << agg.with_completion << "\nconfirmed=" << agg.confirmed
                  << "\nviolations=" << agg.violations << '\n';
        if (agg.violations > 0) {
            std::cerr << agg.first_violation;
            throw CouplingViolation("coupling implication violated");
        }
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CouplingViolation& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const std::logic_error& e) {
        // invalid_argument is a logic_error; infeasible parameters come first
        if (dynamic_cast<const std::invalid_argument*>(&e) ||
            dynamic_cast<const std::domain_error*>(&e) ||
            dynamic_cast<const std::out_of_range*>(&e)) {
            std::cerr << "error: " << e.what() << '\n';
            return 2;
        }
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
}
