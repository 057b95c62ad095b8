#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tgg/experiments.hpp"

using namespace tgg;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("kernel spec strings") {
    Kernel h = parse_kernel_spec("hard");
    REQUIRE(h.variant == KernelVariant::Hard);
    REQUIRE(h.alpha == 1.0);

    Kernel a = parse_kernel_spec("alpha:0.5");
    REQUIRE(a.variant == KernelVariant::AlphaHard);
    REQUIRE(a.alpha == 0.5);

    Kernel s = parse_kernel_spec("soft:1,2", 3);
    REQUIRE(s.variant == KernelVariant::SoftTail);
    REQUIRE(s.alpha == 1.0);
    REQUIRE(s.beta == 2.0);
    REQUIRE(s.d == 3);

    REQUIRE_THROWS_WITH(parse_kernel_spec("alpha"), ContainsSubstring("expected hard"));
    REQUIRE_THROWS_WITH(parse_kernel_spec("soft:1"), ContainsSubstring("needs alpha,beta"));
    REQUIRE_THROWS_WITH(parse_kernel_spec("alpha:x2"), ContainsSubstring("bad number"));
    REQUIRE_THROWS_WITH(parse_kernel_spec("soft:1,2,3"), ContainsSubstring("bad number"));
    REQUIRE_THROWS_WITH(parse_kernel_spec("gauss:1"), ContainsSubstring("expected hard"));
    REQUIRE_THROWS_AS(parse_kernel_spec("alpha:1.5"), std::invalid_argument);
}

TEST_CASE("key=value config parsing") {
    std::stringstream in(
        "# comment\n"
        "\n"
        "  mode = sweep \n"
        "n = 1000, 2000\n"
        "seed=9\n"
        "c-grid = 0.5,1,2\n");
    auto kv = parse_kv_stream(in);
    REQUIRE(kv.at("mode") == "sweep");
    REQUIRE(kv.at("n") == "1000, 2000");

    ExperimentConfig cfg;
    apply_kv(cfg, kv);
    REQUIRE(cfg.mode == "sweep");
    REQUIRE(cfg.n_list == std::vector<std::size_t>{1000, 2000});
    REQUIRE(cfg.seed == 9);
    REQUIRE(cfg.seed_set);
    REQUIRE(cfg.c_grid == std::vector<double>{0.5, 1.0, 2.0});
    REQUIRE(cfg.C == 8.0);  // untouched default
    validate(cfg);

    // later application wins
    apply_kv(cfg, {{"trials", "7"}});
    apply_kv(cfg, {{"trials", "9"}});
    REQUIRE(cfg.trials == 9);

    std::stringstream bad1("mode=sweep\nseed=1\nnonsense\n");
    REQUIRE_THROWS_WITH(parse_kv_stream(bad1), ContainsSubstring("line 3"));
    std::stringstream bad2(" = 5\n");
    REQUIRE_THROWS_WITH(parse_kv_stream(bad2), ContainsSubstring("empty key"));
    REQUIRE_THROWS_WITH(apply_kv(cfg, {{"bogus", "1"}}), ContainsSubstring("unknown config key: bogus"));
    REQUIRE_THROWS_WITH(apply_kv(cfg, {{"n", "12x"}}), ContainsSubstring("bad integer for n"));
    REQUIRE_THROWS_WITH(apply_kv(cfg, {{"c-grid", "1,,2"}}), ContainsSubstring("empty element"));
    REQUIRE_THROWS_WITH(parse_kv_file("/nonexistent/cfg"), ContainsSubstring("cannot open"));
}

TEST_CASE("config validation") {
    ExperimentConfig cfg;
    cfg.n_list = {100};
    REQUIRE_THROWS_WITH(validate(cfg), ContainsSubstring("seed is required"));
    cfg.seed_set = true;

    validate(cfg);

    ExperimentConfig bad = cfg;
    bad.trials = 0;
    REQUIRE_THROWS_WITH(validate(bad), ContainsSubstring("trials must be >= 1"));
    bad = cfg;
    bad.workers = 0;
    REQUIRE_THROWS_WITH(validate(bad), ContainsSubstring("workers must be >= 1"));
    bad = cfg;
    bad.d = 1;
    REQUIRE_THROWS_WITH(validate(bad), ContainsSubstring("d must be >= 2"));
    bad = cfg;
    bad.c_grid = {0.5, 0.5};
    REQUIRE_THROWS_WITH(validate(bad), ContainsSubstring("strictly increasing"));
    bad = cfg;
    bad.c_grid.clear();
    REQUIRE_THROWS_WITH(validate(bad), ContainsSubstring("non-empty"));
    bad = cfg;
    bad.kernel = "soft:1";
    REQUIRE_THROWS_AS(validate(bad), std::invalid_argument);

    auto grid = default_c_grid();
    REQUIRE(grid.size() == 9);
    REQUIRE(grid.front() == 0.25);
    REQUIRE(grid.back() == 8.0);
}

TEST_CASE("sweep results do not depend on worker count") {
    SweepSpec spec;
    spec.n_list = {60, 120};
    spec.c_grid = {0.5, 1.0, 8.0};
    spec.trials = 40;
    spec.seed = 5;

    spec.workers = 1;
    SweepResult one = run_sweep(spec);
    spec.workers = 3;
    SweepResult three = run_sweep(spec);

    std::stringstream a, b;
    emit_csv(one, a);
    emit_csv(three, b);
    REQUIRE(a.str() == b.str());

    // C=8 rows blow past r=1/2 at these sizes and must be skipped
    REQUIRE(one.rows.size() == 6);
    int skipped = 0;
    for (const SweepRow& row : one.rows) {
        if (row.skipped) {
            ++skipped;
            REQUIRE(row.trials == 0);
            REQUIRE(row.C == 8.0);
        } else {
            REQUIRE(row.trials == 40);
            REQUIRE(row.r == Catch::Approx(row.C * std::pow(double(row.n), -1.0 / 3.0)));
            // per-trial implications: temporal => all-reachable source => pair, and => simple
            REQUIRE(row.temp_conn <= row.typ_source);
            REQUIRE(row.typ_source <= row.typ_pair);
            REQUIRE(row.typ_pair <= row.trials);
            REQUIRE(row.temp_conn <= row.simple_conn);
            REQUIRE(row.walk_sum >= 0);
        }
    }
    REQUIRE(skipped == 2);

    REQUIRE_THROWS_AS(run_sweep(SweepSpec{.n_list = {}, .c_grid = {1.0}}), std::invalid_argument);
}

TEST_CASE("csv round-trip") {
    SweepSpec spec;
    spec.n_list = {50};
    spec.c_grid = {0.5, 1.0};
    spec.trials = 30;
    spec.seed = 11;
    SweepResult res = run_sweep(spec);

    std::stringstream out;
    emit_csv(res, out);
    std::string text = out.str();
    REQUIRE(text.rfind(sweep_csv_header(), 0) == 0);
    REQUIRE(text.find('\r') == std::string::npos);
    REQUIRE(text.back() == '\n');

    std::stringstream in(text);
    std::vector<CsvRow> rows = read_sweep_csv(in);
    REQUIRE(rows.size() == res.rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        REQUIRE(rows[i].n == res.rows[i].n);
        REQUIRE(rows[i].C == res.rows[i].C);          // g17 round-trips exactly
        REQUIRE(rows[i].r == res.rows[i].r);
        REQUIRE(rows[i].trials == res.rows[i].trials);
        REQUIRE(rows[i].temp_conn == res.rows[i].frac_temp());
        REQUIRE(rows[i].mean_walk == res.rows[i].mean_walk());
        REQUIRE(rows[i].ci_lo <= rows[i].temp_conn);
        REQUIRE(rows[i].ci_hi >= rows[i].temp_conn);
    }

    // file path variants
    const char* path = "tmp_sweep_roundtrip.csv";
    emit_csv(res, path);
    std::vector<CsvRow> again = read_sweep_csv(std::string(path));
    REQUIRE(again.size() == rows.size());
    REQUIRE(again.back().mean_walk == rows.back().mean_walk);
    std::remove(path);

    SweepResult empty;
    std::stringstream eout;
    emit_csv(empty, eout);
    REQUIRE(eout.str() == std::string(sweep_csv_header()) + "\n");
    std::stringstream ein(eout.str());
    REQUIRE(read_sweep_csv(ein).empty());

    std::stringstream bad1("nope\n");
    REQUIRE_THROWS_WITH(read_sweep_csv(bad1), ContainsSubstring("bad header"));
    std::stringstream bad2(std::string(sweep_csv_header()) + "\n1,2,3\n");
    REQUIRE_THROWS_WITH(read_sweep_csv(bad2), ContainsSubstring("expected 12 fields"));
    std::stringstream bad3("");
    REQUIRE_THROWS_WITH(read_sweep_csv(bad3), ContainsSubstring("empty input"));
    REQUIRE_THROWS_WITH(read_sweep_csv(std::string("/nonexistent/file.csv")),
                        ContainsSubstring("cannot open"));
}

namespace {

SweepResult synthetic_sweep(std::size_t n, const std::vector<double>& Cs,
                            const std::vector<double>& ps, int trials) {
    SweepResult res;
    for (std::size_t i = 0; i < Cs.size(); ++i) {
        SweepRow row;
        row.n = n;
        row.d = 2;
        row.C = Cs[i];
        row.r = Cs[i] * std::pow(static_cast<double>(n), -1.0 / 3.0);
        row.trials = trials;
        row.temp_conn = std::llround(ps[i] * trials);
        res.rows.push_back(row);
    }
    return res;
}

}  // namespace

TEST_CASE("threshold fit on synthetic curves") {
    // hard step: crossing halfway between 2 and 3 by symmetry of the logit clamp
    SweepResult step = synthetic_sweep(1000, {1, 2, 3, 4}, {0, 0, 1, 1}, 100);
    ThresholdFit f = fit_threshold(step, 1000, 200);
    REQUIRE(f.C50 == Catch::Approx(2.5).epsilon(1e-12));
    REQUIRE(!f.degenerate);
    REQUIRE(f.r50 == Catch::Approx(2.5 * std::pow(1000.0, -1.0 / 3.0)).epsilon(1e-12));
    REQUIRE(f.ci_lo >= 2.0);
    REQUIRE(f.ci_hi <= 3.0);
    REQUIRE(f.ci_lo <= f.C50);
    REQUIRE(f.C50 <= f.ci_hi);

    // logistic curve centered at 2.6: logit-linear interpolation recovers the center
    std::vector<double> Cs{1, 1.5, 2, 2.5, 3, 3.5, 4};
    std::vector<double> ps;
    for (double c : Cs) ps.push_back(1.0 / (1.0 + std::exp(-(c - 2.6) / 0.4)));
    ThresholdFit g = fit_threshold(synthetic_sweep(4000, Cs, ps, 1000), 4000, 50);
    REQUIRE(g.C50 == Catch::Approx(2.6).margin(0.02));

    // multiple crossings: the last upward one wins
    ThresholdFit h = fit_threshold(synthetic_sweep(1000, {1, 2, 3, 4}, {0.2, 0.6, 0.3, 0.8}, 100),
                                   1000, 50);
    REQUIRE(h.C50 > 3.0);
    REQUIRE(h.C50 < 4.0);

    // constant 1/2 is flagged and pinned to the grid midpoint
    SweepResult flat = synthetic_sweep(1000, default_c_grid(),
                                       std::vector<double>(9, 0.5), 100);
    ThresholdFit dg = fit_threshold(flat, 1000, 50);
    REQUIRE(dg.degenerate);
    REQUIRE(dg.C50 == Catch::Approx(4.125).epsilon(1e-12));
    REQUIRE(dg.ci_lo == 0.25);
    REQUIRE(dg.ci_hi == 8.0);

    REQUIRE_THROWS_WITH(
        fit_threshold(synthetic_sweep(1000, {1, 2, 3, 4}, {0.9, 0.95, 1, 1}, 100), 1000, 10),
        ContainsSubstring("downward"));
    REQUIRE_THROWS_WITH(
        fit_threshold(synthetic_sweep(1000, {1, 2, 3, 4}, {0, 0, 0.1, 0.2}, 100), 1000, 10),
        ContainsSubstring("upward"));
    REQUIRE_THROWS_WITH(fit_threshold(synthetic_sweep(1000, {1}, {0.5}, 100), 1000, 10),
                        ContainsSubstring("two usable grid points"));
    REQUIRE_THROWS_AS(fit_threshold(step, 9999, 10), std::invalid_argument);  // no such n

    // skipped rows are invisible to the fit
    SweepResult with_skip = step;
    SweepRow skip;
    skip.n = 1000;
    skip.C = 50.0;
    skip.skipped = true;
    skip.trials = 0;
    with_skip.rows.push_back(skip);
    REQUIRE(fit_threshold(with_skip, 1000, 10).C50 == Catch::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("scaling check against synthetic thresholds") {
    auto make_fits = [](double expo) {
        std::vector<ThresholdFit> fits;
        for (std::size_t n : {1000, 2000, 4000, 8000}) {
            ThresholdFit f;
            f.n = n;
            f.d = 2;
            f.r50 = 3.0 * std::pow(static_cast<double>(n), expo);
            f.C50 = f.r50 * std::pow(static_cast<double>(n), 1.0 / 3.0);
            fits.push_back(f);
        }
        return fits;
    };
    ScalingReport good = scaling_check(make_fits(-1.0 / 3.0), 2);
    REQUIRE(good.slope == Catch::Approx(-1.0 / 3.0).epsilon(1e-10));
    REQUIRE(good.expected_slope == Catch::Approx(-1.0 / 3.0));
    REQUIRE(good.c50_ratio == Catch::Approx(1.0).epsilon(1e-10));
    REQUIRE(good.slope_ok);
    REQUIRE(good.ratio_ok);
    REQUIRE(good.pass);

    ScalingReport off = scaling_check(make_fits(-0.5), 2);
    REQUIRE(off.slope == Catch::Approx(-0.5).epsilon(1e-10));
    REQUIRE(!off.slope_ok);
    REQUIRE(off.c50_ratio == Catch::Approx(std::pow(8.0, 1.0 / 6.0)).epsilon(1e-10));
    REQUIRE(!off.ratio_ok);
    REQUIRE(!off.pass);

    auto all = make_fits(-1.0 / 3.0);
    std::vector<ThresholdFit> two(all.begin(), all.begin() + 2);
    REQUIRE_THROWS_WITH(scaling_check(two, 2), ContainsSubstring("at least 3"));
    auto narrow = make_fits(-1.0 / 3.0);
    for (auto& f : narrow) f.n = 1000 + (&f - narrow.data());  // 1000..1003
    REQUIRE_THROWS_WITH(scaling_check(narrow, 2), ContainsSubstring("factor of 4"));
}

TEST_CASE("trial evaluation is a pure function of its key") {
    uint64_t key = trial_key(42, 500, 2.0, 7);
    TrialOutcome a = evaluate_trial(500, 2, 0.1, Kernel::hard(), key);
    TrialOutcome b = evaluate_trial(500, 2, 0.1, Kernel::hard(), key);
    REQUIRE(a.temporal_conn == b.temporal_conn);
    REQUIRE(a.simple_conn == b.simple_conn);
    REQUIRE(a.typ_source == b.typ_source);
    REQUIRE(a.typ_pair == b.typ_pair);
    REQUIRE(a.walk == b.walk);
    REQUIRE(trial_key(42, 500, 2.0, 7) != trial_key(42, 500, 2.0, 8));
    REQUIRE(trial_key(42, 500, 2.0, 7) != trial_key(43, 500, 2.0, 7));

    TrialOutcome single = evaluate_trial(1, 2, 0.1, Kernel::hard(), key);
    REQUIRE(single.temporal_conn);
    REQUIRE(single.simple_conn);
    REQUIRE(single.walk == 0);
}

TEST_CASE("density gap demo at reduced size") {
    GapReport rep = gap_demo(2000, 2, 60, 1);
    REQUIRE(rep.r == Catch::Approx(2.0 * simple_connectivity_radius(2000, 2)).epsilon(1e-12));
    REQUIRE(rep.trials == 60);
    // comfortably inside the gap even at this size
    REQUIRE(rep.frac_simple >= 0.85);
    REQUIRE(rep.frac_temporal <= 0.2);
    REQUIRE(rep.simple_ok == (rep.frac_simple >= 0.9));
    REQUIRE(rep.temporal_ok == (rep.frac_temporal <= 0.1));
    REQUIRE_THROWS_AS(gap_demo(2000, 2, 0, 1), std::invalid_argument);
}

TEST_CASE("svg report") {
    SweepSpec spec;
    spec.n_list = {50};
    spec.c_grid = {0.5, 1.0, 2.0};
    spec.trials = 10;
    spec.seed = 3;
    SweepResult res = run_sweep(spec);

    std::stringstream a, b;
    emit_svg_plot(res, a);
    emit_svg_plot(res, b);
    std::string svg = a.str();
    REQUIRE(svg == b.str());
    REQUIRE(svg.rfind("<svg", 0) == 0);
    REQUIRE(svg.find("</svg>") != std::string::npos);
    REQUIRE(svg.find("polyline") != std::string::npos);
    REQUIRE(svg.find("n=50") != std::string::npos);

    std::stringstream e;
    emit_svg_plot(SweepResult{}, e);
    REQUIRE(e.str().rfind("<svg", 0) == 0);
    REQUIRE(e.str().find("polyline") == std::string::npos);
}
