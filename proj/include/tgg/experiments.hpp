#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "tgg/bounds.hpp"
#include "tgg/generate.hpp"
#include "tgg/kernel.hpp"
#include "tgg/rng.hpp"
#include "tgg/temporal.hpp"
#include "tgg/util.hpp"

// Monte Carlo sweeps over (n, C) grids, threshold fitting, the density-gap
// demo, and deterministic CSV/SVG reporting. Everything here is a pure
// function of its seed: per-trial keys are derived from (seed, n, C, trial),
// so results never depend on worker count or scheduling.

namespace tgg {

// ---------------------------------------------------------------------------
// configuration

inline std::vector<double> default_c_grid() {
    return {0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0};
}

// "hard" | "alpha:<a>" | "soft:<a>,<b>"
inline Kernel parse_kernel_spec(const std::string& spec, int d = 2) {
    if (spec == "hard") return Kernel::hard();
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    auto parse_num = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("parse_kernel_spec: bad number in '" + spec + "'");
        }
        if (used != s.size())
            throw std::invalid_argument("parse_kernel_spec: bad number in '" + spec + "'");
        return v;
    };
    if (head == "alpha" && colon != std::string::npos)
        return Kernel::alpha_hard(parse_num(spec.substr(colon + 1)));
    if (head == "soft" && colon != std::string::npos) {
        std::string rest = spec.substr(colon + 1);
        auto comma = rest.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("parse_kernel_spec: soft kernel needs alpha,beta");
        return Kernel::soft_tail(parse_num(rest.substr(0, comma)), parse_num(rest.substr(comma + 1)), d);
    }
    throw std::invalid_argument("parse_kernel_spec: expected hard, alpha:<a>, or soft:<a>,<b>, got '" +
                                spec + "'");
}

struct ExperimentConfig {
    std::string mode;
    int d = 2;
    std::vector<std::size_t> n_list;
    std::string kernel = "hard";
    std::vector<double> c_grid = default_c_grid();
    double r = 0.0;  // explicit radius for generate/analyze
    int trials = 100;
    uint64_t seed = 0;
    bool seed_set = false;
    double eps = 0.2;
    double t = 0.01;
    double alpha = 1.0;
    double C = 8.0;
    double beta = 1.0;
    std::string out_dir = ".";
    int workers = 1;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& s, Parse parse, const char* what) {
    std::vector<T> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw std::invalid_argument(std::string("empty element in ") + what);
        out.push_back(parse(item));
    }
    if (out.empty()) throw std::invalid_argument(std::string("empty list for ") + what);
    return out;
}

inline std::size_t parse_u64_strict(const std::string& s, const char* what) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("bad integer for ") + what + ": '" + s + "'");
    }
    if (used != s.size())
        throw std::invalid_argument(std::string("bad integer for ") + what + ": '" + s + "'");
    return static_cast<std::size_t>(v);
}

inline double parse_double_strict(const std::string& s, const char* what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("bad number for ") + what + ": '" + s + "'");
    }
    if (used != s.size())
        throw std::invalid_argument(std::string("bad number for ") + what + ": '" + s + "'");
    return v;
}

}  // namespace detail

// Flat key=value lines; '#' starts a comment, blank lines skipped.
inline std::map<std::string, std::string> parse_kv_stream(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = detail::trim(line);
        if (s.empty() || s[0] == '#') continue;
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key=value");
        std::string key = detail::trim(s.substr(0, eq));
        std::string val = detail::trim(s.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
        kv[key] = val;
    }
    return kv;
}

inline std::map<std::string, std::string> parse_kv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    return parse_kv_stream(in);
}

// Keys mirror the long CLI flags. Flags applied after this override it.
inline void apply_kv(ExperimentConfig& cfg, const std::map<std::string, std::string>& kv) {
    using detail::parse_double_strict;
    using detail::parse_u64_strict;
    for (const auto& [key, val] : kv) {
        if (key == "mode") cfg.mode = val;
        else if (key == "n")
            cfg.n_list = detail::parse_list<std::size_t>(
                val, [](const std::string& s) { return detail::parse_u64_strict(s, "n"); }, "n");
        else if (key == "d") cfg.d = static_cast<int>(parse_u64_strict(val, "d"));
        else if (key == "kernel") cfg.kernel = val;
        else if (key == "c-grid")
            cfg.c_grid = detail::parse_list<double>(
                val, [](const std::string& s) { return detail::parse_double_strict(s, "c-grid"); },
                "c-grid");
        else if (key == "r") cfg.r = parse_double_strict(val, "r");
        else if (key == "trials") cfg.trials = static_cast<int>(parse_u64_strict(val, "trials"));
        else if (key == "seed") {
            cfg.seed = parse_u64_strict(val, "seed");
            cfg.seed_set = true;
        } else if (key == "eps") cfg.eps = parse_double_strict(val, "eps");
        else if (key == "t") cfg.t = parse_double_strict(val, "t");
        else if (key == "alpha") cfg.alpha = parse_double_strict(val, "alpha");
        else if (key == "C") cfg.C = parse_double_strict(val, "C");
        else if (key == "beta") cfg.beta = parse_double_strict(val, "beta");
        else if (key == "out") cfg.out_dir = val;
        else if (key == "workers") cfg.workers = static_cast<int>(parse_u64_strict(val, "workers"));
        else throw std::invalid_argument("unknown config key: " + key);
    }
}

// Seeds have no wall-clock default: reproducibility is opt-out by design.
inline void validate(const ExperimentConfig& cfg) {
    if (!cfg.seed_set) throw std::invalid_argument("config: seed is required");
    if (cfg.trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    if (cfg.workers < 1) throw std::invalid_argument("config: workers must be >= 1");
    if (cfg.d < 2) throw std::invalid_argument("config: d must be >= 2");
    if (cfg.c_grid.empty()) throw std::invalid_argument("config: c-grid must be non-empty");
    for (std::size_t i = 1; i < cfg.c_grid.size(); ++i)
        if (!(cfg.c_grid[i - 1] < cfg.c_grid[i]))
            throw std::invalid_argument("config: c-grid must be strictly increasing");
    parse_kernel_spec(cfg.kernel, cfg.d);  // throws on a malformed spec
}

// ---------------------------------------------------------------------------
// sweep engine

struct SweepRow {
    std::size_t n = 0;
    int d = 2;
    double C = 0.0;
    double r = 0.0;
    int trials = 0;  // 0 marks a skipped row (r > 1/2)
    long long temp_conn = 0, simple_conn = 0, typ_source = 0, typ_pair = 0;
    long long walk_sum = 0;
    bool skipped = false;

    double frac(long long c) const { return trials > 0 ? static_cast<double>(c) / trials : 0.0; }
    double frac_temp() const { return frac(temp_conn); }
    double frac_simple() const { return frac(simple_conn); }
    double frac_source() const { return frac(typ_source); }
    double frac_pair() const { return frac(typ_pair); }
    double mean_walk() const { return trials > 0 ? static_cast<double>(walk_sum) / trials : 0.0; }
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

struct SweepSpec {
    std::vector<std::size_t> n_list;
    std::vector<double> c_grid = default_c_grid();
    int d = 2;
    Kernel kernel = Kernel::hard();
    int trials = 100;
    uint64_t seed = 1;
    int workers = 1;
};

struct TrialOutcome {
    bool temporal_conn = false, simple_conn = false, typ_source = false, typ_pair = false;
    int walk = 0;
};

// One graph: generate, union-find connectivity, one full single-source reach
// (feeding the typical-source and typical-pair indicators), the walk DP, and
// the temporal-connectivity decision. Ordering of the checks exploits the
// implications temporal => typical source => simple, so subcritical trials
// never pay for the all-sources pass.
inline TrialOutcome evaluate_trial(std::size_t n, int d, double r, const Kernel& kernel,
                                   uint64_t trial_seed) {
    TrialOutcome out;
    TemporalGraph g = generate_graph(n, d, r, kernel, trial_seed);
    out.simple_conn = is_simply_connected(g);
    out.walk = longest_increasing_walk(g);
    if (n == 1) {
        out.temporal_conn = out.typ_source = out.typ_pair = true;
        return out;
    }
    uint32_t u = static_cast<uint32_t>(mix64(trial_seed, kStreamSource, 1) % n);
    uint32_t v = static_cast<uint32_t>(mix64(trial_seed, kStreamSource, 2) % n);
    if (v == u) v = static_cast<uint32_t>((v + 1) % n);
    ReachabilityResult ru = temporal_reach(g, u);
    out.typ_pair = ru.reachable[v];
    out.typ_source = std::all_of(ru.reachable.begin(), ru.reachable.end(),
                                 [](uint8_t x) { return x != 0; });
    out.temporal_conn = out.simple_conn && out.typ_source && is_temporally_connected(g);
    return out;
}

inline uint64_t trial_key(uint64_t seed, std::size_t n, double C, int trial) {
    return mix64(seed, kStreamTrial, mix64(static_cast<uint64_t>(n), std::bit_cast<uint64_t>(C)),
                 static_cast<uint64_t>(trial));
}

inline SweepResult run_sweep(const SweepSpec& spec) {
    if (spec.n_list.empty() || spec.c_grid.empty())
        throw std::invalid_argument("run_sweep: n list and C grid must be non-empty");
    if (spec.trials < 1) throw std::invalid_argument("run_sweep: trials must be >= 1");
    SweepResult result;
    for (std::size_t n : spec.n_list)
        for (double C : spec.c_grid) {
            SweepRow row;
            row.n = n;
            row.d = spec.d;
            row.C = C;
            row.r = C * std::pow(static_cast<double>(n), -1.0 / (spec.d + 1));
            row.skipped = row.r > 0.5;
            row.trials = row.skipped ? 0 : spec.trials;
            result.rows.push_back(row);
        }

    struct Task {
        std::size_t row;
        int trial;
    };
    std::vector<Task> tasks;
    for (std::size_t ri = 0; ri < result.rows.size(); ++ri)
        for (int t = 0; t < result.rows[ri].trials; ++t) tasks.push_back({ri, t});

    int workers = std::max(1, spec.workers);
    std::atomic<std::size_t> next{0};
    std::vector<std::vector<SweepRow>> partial(workers, result.rows);
    auto work = [&](int w) {
        for (auto& row : partial[w])
            row.temp_conn = row.simple_conn = row.typ_source = row.typ_pair = row.walk_sum = 0;
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) break;
            const Task& task = tasks[i];
            const SweepRow& row = result.rows[task.row];
            TrialOutcome o = evaluate_trial(row.n, row.d, row.r, spec.kernel,
                                            trial_key(spec.seed, row.n, row.C, task.trial));
            SweepRow& acc = partial[w][task.row];
            acc.temp_conn += o.temporal_conn;
            acc.simple_conn += o.simple_conn;
            acc.typ_source += o.typ_source;
            acc.typ_pair += o.typ_pair;
            acc.walk_sum += o.walk;
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }
    for (int w = 0; w < workers; ++w)
        for (std::size_t ri = 0; ri < result.rows.size(); ++ri) {
            result.rows[ri].temp_conn += partial[w][ri].temp_conn;
            result.rows[ri].simple_conn += partial[w][ri].simple_conn;
            result.rows[ri].typ_source += partial[w][ri].typ_source;
            result.rows[ri].typ_pair += partial[w][ri].typ_pair;
            result.rows[ri].walk_sum += partial[w][ri].walk_sum;
        }
    return result;
}

// ---------------------------------------------------------------------------
// CSV

inline const char* sweep_csv_header() {
    return "n,d,C,r,trials,temp_conn,simple_conn,typ_source,typ_pair,mean_walk,ci_lo,ci_hi";
}

inline void emit_csv(const SweepResult& result, std::ostream& os) {
    os << sweep_csv_header() << '\n';
    for (const SweepRow& row : result.rows) {
        WilsonCi ci = row.trials > 0
                          ? wilson_ci(static_cast<uint64_t>(row.temp_conn),
                                      static_cast<uint64_t>(row.trials))
                          : WilsonCi{0.0, 0.0};
        os << row.n << ',' << row.d << ',' << fmt_g17(row.C) << ',' << fmt_g17(row.r) << ','
           << row.trials << ',' << fmt_g17(row.frac_temp()) << ',' << fmt_g17(row.frac_simple())
           << ',' << fmt_g17(row.frac_source()) << ',' << fmt_g17(row.frac_pair()) << ','
           << fmt_g17(row.mean_walk()) << ',' << fmt_g17(ci.lo) << ',' << fmt_g17(ci.hi) << '\n';
    }
}

inline void emit_csv(const SweepResult& result, const std::string& path) {
    std::ofstream os(path, std::ios::binary);  // binary keeps LF on every platform
    if (!os) throw std::runtime_error("emit_csv: cannot open " + path);
    emit_csv(result, os);
    if (!os) throw std::runtime_error("emit_csv: write failed for " + path);
}

// Numeric CSV row as written by emit_csv; fractions, not counts.
struct CsvRow {
    std::size_t n = 0;
    int d = 0;
    double C = 0, r = 0;
    int trials = 0;
    double temp_conn = 0, simple_conn = 0, typ_source = 0, typ_pair = 0;
    double mean_walk = 0, ci_lo = 0, ci_hi = 0;
};

inline std::vector<CsvRow> read_sweep_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("read_sweep_csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != sweep_csv_header()) throw std::runtime_error("read_sweep_csv: bad header");
    std::vector<CsvRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string item;
        while (std::getline(ss, item, ',')) f.push_back(item);
        if (f.size() != 12)
            throw std::runtime_error("read_sweep_csv: line " + std::to_string(lineno) +
                                     ": expected 12 fields");
        CsvRow row;
        row.n = detail::parse_u64_strict(f[0], "n");
        row.d = static_cast<int>(detail::parse_u64_strict(f[1], "d"));
        row.C = detail::parse_double_strict(f[2], "C");
        row.r = detail::parse_double_strict(f[3], "r");
        row.trials = static_cast<int>(detail::parse_u64_strict(f[4], "trials"));
        row.temp_conn = detail::parse_double_strict(f[5], "temp_conn");
        row.simple_conn = detail::parse_double_strict(f[6], "simple_conn");
        row.typ_source = detail::parse_double_strict(f[7], "typ_source");
        row.typ_pair = detail::parse_double_strict(f[8], "typ_pair");
        row.mean_walk = detail::parse_double_strict(f[9], "mean_walk");
        row.ci_lo = detail::parse_double_strict(f[10], "ci_lo");
        row.ci_hi = detail::parse_double_strict(f[11], "ci_hi");
        rows.push_back(row);
    }
    return rows;
}

inline std::vector<CsvRow> read_sweep_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_sweep_csv: cannot open " + path);
    return read_sweep_csv(in);
}

// ---------------------------------------------------------------------------
// threshold fitting

struct ThresholdFit {
    std::size_t n = 0;
    int d = 2;
    double C50 = 0.0;
    double r50 = 0.0;
    double ci_lo = 0.0, ci_hi = 0.0;  // bootstrap percentile interval on C50
    bool degenerate = false;          // constant-1/2 data; C50 is the grid midpoint
    int boot_reps = 0;
};

namespace detail {

// Interpolated upward 1/2-crossing on the logit scale between the bracketing
// adjacent grid points (the last pair with p below then at-or-above 1/2).
// Fractions are clamped away from {0,1} by half a trial. Returns nullopt
// when no upward crossing exists; *degenerate set when every p equals 1/2.
inline std::optional<double> fit_c50(const std::vector<double>& Cs, const std::vector<double>& ps,
                                     int trials, bool* degenerate) {
    if (degenerate) *degenerate = false;
    if (Cs.size() < 2) return std::nullopt;
    if (std::all_of(ps.begin(), ps.end(), [](double p) { return p == 0.5; })) {
        if (degenerate) *degenerate = true;
        return 0.5 * (Cs.front() + Cs.back());
    }
    std::ptrdiff_t idx = -1;
    for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(ps.size()) - 2; i >= 0; --i)
        if (ps[i] < 0.5 && ps[i + 1] >= 0.5) {
            idx = i;
            break;
        }
    if (idx < 0) return std::nullopt;
    double eps = 0.5 / trials;
    auto logit = [&](double p) {
        p = std::clamp(p, eps, 1.0 - eps);
        return std::log(p / (1.0 - p));
    };
    double y0 = logit(ps[idx]), y1 = logit(ps[idx + 1]);
    return Cs[idx] + (Cs[idx + 1] - Cs[idx]) * (0.0 - y0) / (y1 - y0);
}

}  // namespace detail

inline ThresholdFit fit_threshold(const SweepResult& sweep, std::size_t n, int boot_reps = 1000,
                                  uint64_t boot_seed = 0x626f6f74) {
    std::vector<double> Cs, ps;
    std::vector<long long> ks;
    int trials = 0, d = 2;
    for (const SweepRow& row : sweep.rows)
        if (row.n == n && !row.skipped) {
            Cs.push_back(row.C);
            ps.push_back(row.frac_temp());
            ks.push_back(row.temp_conn);
            trials = row.trials;
            d = row.d;
        }
    if (Cs.size() < 2)
        throw std::invalid_argument("fit_threshold: need at least two usable grid points for n=" +
                                    std::to_string(n));
    ThresholdFit fit;
    fit.n = n;
    fit.d = d;
    std::optional<double> c50 = detail::fit_c50(Cs, ps, trials, &fit.degenerate);
    if (!c50) {
        bool all_high = ps.front() >= 0.5;
        throw std::invalid_argument(
            std::string("fit_threshold: fractions never cross 1/2 upward for n=") +
            std::to_string(n) + "; extend the C grid " + (all_high ? "downward" : "upward"));
    }
    fit.C50 = *c50;
    fit.r50 = fit.C50 * std::pow(static_cast<double>(n), -1.0 / (d + 1));
    fit.boot_reps = boot_reps;
    if (fit.degenerate) {
        fit.ci_lo = Cs.front();
        fit.ci_hi = Cs.back();
        return fit;
    }
    std::vector<double> boots;
    boots.reserve(boot_reps);
    for (int rep = 0; rep < boot_reps; ++rep) {
        std::mt19937_64 eng(mix64(boot_seed, static_cast<uint64_t>(n), static_cast<uint64_t>(rep)));
        std::vector<double> rp(ps.size());
        for (std::size_t i = 0; i < ps.size(); ++i) {
            std::binomial_distribution<long long> bin(trials, ps[i]);
            rp[i] = static_cast<double>(bin(eng)) / trials;
        }
        std::optional<double> c = detail::fit_c50(Cs, rp, trials, nullptr);
        // resamples that lose the bracket pin to the relevant end of the grid
        boots.push_back(c ? *c : (rp.front() >= 0.5 ? Cs.front() : Cs.back()));
    }
    std::sort(boots.begin(), boots.end());
    auto pct = [&](double q) {
        double pos = q * (boots.size() - 1);
        std::size_t i = static_cast<std::size_t>(pos);
        double frac = pos - i;
        return i + 1 < boots.size() ? boots[i] * (1 - frac) + boots[i + 1] * frac : boots[i];
    };
    fit.ci_lo = pct(0.025);
    fit.ci_hi = pct(0.975);
    return fit;
}

// ---------------------------------------------------------------------------
// scaling check

struct ScalingReport {
    std::vector<ThresholdFit> fits;
    double slope = 0.0;     // least-squares slope of log r50 vs log n
    double slope_se = 0.0;  // standard error of that slope
    double band_lo = 0.0, band_hi = 0.0;
    double c50_ratio = 0.0;
    double expected_slope = 0.0;
    bool slope_ok = false, ratio_ok = false, pass = false;
};

inline ScalingReport scaling_check(const std::vector<ThresholdFit>& fits, int d) {
    if (fits.size() < 3) throw std::invalid_argument("scaling_check: need at least 3 fits");
    std::size_t n_min = fits.front().n, n_max = fits.front().n;
    for (const auto& f : fits) {
        n_min = std::min(n_min, f.n);
        n_max = std::max(n_max, f.n);
    }
    if (n_max < 4 * n_min)
        throw std::invalid_argument("scaling_check: n values must span a factor of 4");
    ScalingReport rep;
    rep.fits = fits;
    rep.expected_slope = -1.0 / (d + 1);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = fits.size();
    for (const auto& f : fits) {
        double x = std::log(static_cast<double>(f.n));
        double y = std::log(f.r50);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double mx = sx / m, my = sy / m;
    double vxx = sxx - m * mx * mx;
    double vxy = sxy - m * mx * my;
    rep.slope = vxy / vxx;
    double ss_res = 0;
    for (const auto& f : fits) {
        double x = std::log(static_cast<double>(f.n));
        double y = std::log(f.r50);
        double e = y - (my + rep.slope * (x - mx));
        ss_res += e * e;
    }
    rep.slope_se = m > 2 ? std::sqrt(ss_res / (m - 2) / vxx) : 0.0;
    rep.band_lo = rep.slope - 1.959963984540054 * rep.slope_se;
    rep.band_hi = rep.slope + 1.959963984540054 * rep.slope_se;
    double c_min = fits.front().C50, c_max = fits.front().C50;
    for (const auto& f : fits) {
        c_min = std::min(c_min, f.C50);
        c_max = std::max(c_max, f.C50);
    }
    rep.c50_ratio = c_max / c_min;
    rep.slope_ok = std::fabs(rep.slope - rep.expected_slope) <= 0.05;
    rep.ratio_ok = rep.c50_ratio <= 1.25;
    rep.pass = rep.slope_ok && rep.ratio_ok;
    return rep;
}

// ---------------------------------------------------------------------------
// density-gap demo

struct GapReport {
    std::size_t n = 0;
    int d = 2;
    double r = 0.0;
    int trials = 0;
    double frac_simple = 0.0, frac_temporal = 0.0;
    bool simple_ok = false;    // >= 0.9
    bool temporal_ok = false;  // <= 0.1
    bool pass = false;
};

// At twice the simple-connectivity radius the plain graph is connected and
// the temporal one is not: the density gap at desk scale.
inline GapReport gap_demo(std::size_t n, int d, int trials, uint64_t seed,
                          const Kernel& kernel = Kernel::hard()) {
    if (trials < 1) throw std::invalid_argument("gap_demo: trials must be >= 1");
    GapReport rep;
    rep.n = n;
    rep.d = d;
    rep.r = 2.0 * simple_connectivity_radius(n, d);
    rep.trials = trials;
    long long simple = 0, temporal = 0;
    for (int t = 0; t < trials; ++t) {
        TrialOutcome o = evaluate_trial(n, d, rep.r, kernel, trial_key(seed, n, rep.r, t));
        simple += o.simple_conn;
        temporal += o.temporal_conn;
    }
    rep.frac_simple = static_cast<double>(simple) / trials;
    rep.frac_temporal = static_cast<double>(temporal) / trials;
    rep.simple_ok = rep.frac_simple >= 0.9;
    rep.temporal_ok = rep.frac_temporal <= 0.1;
    rep.pass = rep.simple_ok && rep.temporal_ok;
    return rep;
}

// ---------------------------------------------------------------------------
// SVG

namespace detail {

inline std::string fmt_svg(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace detail

// Self-contained scatter/line plot of temporal-connectivity fraction vs C,
// one polyline per n. Pure function of the result: identical bytes for
// identical inputs.
inline void emit_svg_plot(const SweepResult& result, std::ostream& os) {
    const double W = 720, H = 480, L = 70, R = 24, T = 24, B = 56;
    std::vector<const SweepRow*> rows;
    for (const SweepRow& row : result.rows)
        if (!row.skipped) rows.push_back(&row);
    double cmin = 0, cmax = 1;
    if (!rows.empty()) {
        cmin = cmax = rows[0]->C;
        for (auto* row : rows) {
            cmin = std::min(cmin, row->C);
            cmax = std::max(cmax, row->C);
        }
        if (cmax == cmin) cmax = cmin + 1;
    }
    auto X = [&](double c) { return L + (c - cmin) / (cmax - cmin) * (W - L - R); };
    auto Y = [&](double f) { return H - B - f * (H - T - B); };
    std::vector<std::size_t> ns;
    for (auto* row : rows)
        if (std::find(ns.begin(), ns.end(), row->n) == ns.end()) ns.push_back(row->n);
    static const char* palette[] = {"#1b6ca8", "#d1495b", "#2e933c", "#8e44ad", "#e67e22", "#38383d"};

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    // frame and y ticks
    os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
       << "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 5; ++k) {
        double f = k / 5.0;
        os << "<line x1=\"" << L - 4 << "\" y1=\"" << detail::fmt_svg(Y(f)) << "\" x2=\"" << L
           << "\" y2=\"" << detail::fmt_svg(Y(f)) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << L - 8 << "\" y=\"" << detail::fmt_svg(Y(f) + 4)
           << "\" font-size=\"12\" text-anchor=\"end\">" << detail::fmt_svg(f) << "</text>\n";
    }
    std::vector<double> cticks;
    for (auto* row : rows)
        if (std::find(cticks.begin(), cticks.end(), row->C) == cticks.end())
            cticks.push_back(row->C);
    std::sort(cticks.begin(), cticks.end());
    for (double c : cticks) {
        os << "<line x1=\"" << detail::fmt_svg(X(c)) << "\" y1=\"" << H - B << "\" x2=\""
           << detail::fmt_svg(X(c)) << "\" y2=\"" << H - B + 4 << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << detail::fmt_svg(X(c)) << "\" y=\"" << H - B + 18
           << "\" font-size=\"12\" text-anchor=\"middle\">" << detail::fmt_svg(c) << "</text>\n";
    }
    os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12
       << "\" font-size=\"13\" text-anchor=\"middle\">C</text>\n";
    os << "<text x=\"16\" y=\"" << (T + H - B) / 2
       << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << (T + H - B) / 2 << ")\">fraction temporally connected</text>\n";
    // half line
    os << "<line x1=\"" << L << "\" y1=\"" << detail::fmt_svg(Y(0.5)) << "\" x2=\"" << W - R
       << "\" y2=\"" << detail::fmt_svg(Y(0.5))
       << "\" stroke=\"#aaaaaa\" stroke-dasharray=\"4 3\"/>\n";
    for (std::size_t ni = 0; ni < ns.size(); ++ni) {
        const char* color = palette[ni % 6];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (auto* row : rows)
            if (row->n == ns[ni]) {
                if (!first) os << ' ';
                os << detail::fmt_svg(X(row->C)) << ',' << detail::fmt_svg(Y(row->frac_temp()));
                first = false;
            }
        os << "\"/>\n";
        for (auto* row : rows)
            if (row->n == ns[ni])
                os << "<circle cx=\"" << detail::fmt_svg(X(row->C)) << "\" cy=\""
                   << detail::fmt_svg(Y(row->frac_temp())) << "\" r=\"3\" fill=\"" << color
                   << "\"/>\n";
        os << "<text x=\"" << W - R - 8 << "\" y=\"" << T + 16 + 16 * static_cast<double>(ni)
           << "\" font-size=\"12\" text-anchor=\"end\" fill=\"" << color << "\">n=" << ns[ni]
           << "</text>\n";
    }
    os << "</svg>\n";
}

inline void emit_svg_plot(const SweepResult& result, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("emit_svg_plot: cannot open " + path);
    emit_svg_plot(result, os);
    if (!os) throw std::runtime_error("emit_svg_plot: write failed for " + path);
}

}  // namespace tgg
