#include "hsbnet/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "hsbnet/benchmarks.hpp"
#include "hsbnet/error.hpp"
#include "hsbnet/parallel.hpp"
#include "hsbnet/rng.hpp"
#include "hsbnet/simulator.hpp"

namespace hsbnet {

namespace {

constexpr std::uint64_t kTrialStreamTag = 0x7A1;
constexpr std::uint64_t kPointStreamTag = 0x9A1;

const std::vector<std::pair<ExperimentKind, const char*>> kNames = {
    {ExperimentKind::ValidateScq, "validate-scq"}, {ExperimentKind::ValidatePtq, "validate-ptq"},
    {ExperimentKind::SweepBs, "sweep-bs"},         {ExperimentKind::SweepMu, "sweep-mu"},
    {ExperimentKind::SweepTau, "sweep-tau"},       {ExperimentKind::RateCdf, "rate-cdf"},
    {ExperimentKind::SingleRun, "single-run"},
};

std::string num(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header) : out_(path) {
        if (!out_) throw Error("cannot write " + path.string());
        row(header);
    }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t k = 0; k < cells.size(); ++k) out_ << (k ? "," : "") << cells[k];
        out_ << '\n';
        if (!out_) throw Error("write failed");
    }

private:
    std::ofstream out_;
};

std::filesystem::path prepare(const ExperimentSpec& spec, const std::string& file) {
    std::filesystem::create_directories(spec.out_dir);
    return spec.out_dir / file;
}

std::uint64_t point_seed(std::uint64_t master, std::size_t point) {
    Rng rng = make_stream(master, {kPointStreamTag, point});
    return rng();
}

bool is_comparison(ExperimentKind k) {
    return k == ExperimentKind::SweepBs || k == ExperimentKind::SweepMu || k == ExperimentKind::SweepTau;
}

// validate-scq

ExperimentResult run_validate_scq(const ExperimentSpec& spec, const std::vector<double>& grid) {
    const std::vector<double> taus{0.4, 0.7, 1.0};
    struct Point {
        double lambda, tau, analytic, weighted, sim_mean = 0, sim_hw = 0;
        bool stable = true;
    };
    std::vector<Point> points;
    for (double tau : taus) {
        for (double lambda : grid) points.push_back({lambda, tau, 0, 0});
    }
    const int reps = effective_trials(spec);
    parallel_for(points.size(), spec.threads, [&](std::size_t k) {
        auto& p = points[k];
        MobileUser u;
        u.arrival_rate = p.lambda;
        u.tau = p.tau;
        try {
            p.analytic = scq_latency(u, VarianceModel::Mixture).latency;
            p.weighted = scq_latency(u, VarianceModel::WeightedSum).latency;
            const auto est = simulate_scq(u, sim_config(spec.sim_slots, reps, point_seed(spec.seed, k)));
            p.sim_mean = est.mean;
            p.sim_hw = est.half_width_95;
        } catch (const UnstableQueueError&) {
            p.stable = false;
        }
    });
    ExperimentResult res;
    const auto path = prepare(spec, "validate-scq.csv");
    CsvWriter csv(path, {"lambda", "tau", "analytic_ms", "analytic_weighted_sum_ms", "simulated_ms",
                         "ci_half_width_ms", "relative_gap", "within_ci"});
    for (const auto& p : points) {
        if (!p.stable) {
            csv.row({num(p.lambda), num(p.tau), "inf", "inf", "nan", "nan", "nan", "unstable"});
            continue;
        }
        const double gap = std::abs(p.sim_mean - p.analytic) / p.analytic;
        const bool inside = std::abs(p.sim_mean - p.analytic) <= p.sim_hw;
        csv.row({num(p.lambda), num(p.tau), num(p.analytic * 1e3), num(p.weighted * 1e3), num(p.sim_mean * 1e3),
                 num(p.sim_hw * 1e3), num(gap), inside ? "1" : "0"});
    }
    res.files.push_back(path);
    return res;
}

// validate-ptq

ExperimentResult run_validate_ptq(const ExperimentSpec& spec, const std::vector<double>& grid) {
    struct Series {
        Mode mode;
        double tau;
    };
    const std::vector<Series> series{{Mode::SemCom, 0.5}, {Mode::SemCom, 1.0}, {Mode::BitCom, 1.0}};
    struct Point {
        Series s;
        double z;
        PtqMetrics analytic;
        PtqEstimate sim;
        bool ok = true;
    };
    std::vector<Point> points;
    for (const auto& s : series) {
        for (double z : grid) points.push_back({s, z, {}, {}});
    }
    const SystemConfig sys = spec.generation.system;
    const int reps = effective_trials(spec);
    parallel_for(points.size(), spec.threads, [&](std::size_t k) {
        auto& p = points[k];
        MobileUser u;
        u.tau = p.s.tau;
        LinkModel link;
        link.mean_sinr_db = 0.0;
        link.sinr_std_db = spec.generation.sinr_std_db;
        const ArrivalSpec arrival{ptq_arrival_rate(u, p.s.mode), sys.slot_length};
        const DepartureSpec departure = departure_spec(link, p.z, sys);
        try {
            p.analytic = solve_ptq(arrival, departure, sys.buffer_size).metrics;
            p.sim = simulate_ptq(arrival, departure, sys.buffer_size,
                                 sim_config(spec.sim_slots, reps, point_seed(spec.seed, k)));
        } catch (const Error&) {
            p.ok = false;
        }
    });
    ExperimentResult res;
    const auto path = prepare(spec, "validate-ptq.csv");
    CsvWriter csv(path, {"mode", "tau", "bandwidth_hz", "analytic_loss", "simulated_loss", "loss_ci_half_width",
                         "analytic_latency_ms", "simulated_latency_ms", "latency_ci_half_width_ms",
                         "loss_within_ci", "latency_within_ci"});
    for (const auto& p : points) {
        if (!p.ok) {
            csv.row({to_string(p.s.mode), num(p.s.tau), num(p.z), "nan", "nan", "nan", "nan", "nan", "nan", "0", "0"});
            continue;
        }
        const bool loss_ok = (p.analytic.loss < 1e-6 && p.sim.loss.mean < 1e-6) || p.sim.loss.covers(p.analytic.loss);
        csv.row({to_string(p.s.mode), num(p.s.tau), num(p.z), num(p.analytic.loss), num(p.sim.loss.mean),
                 num(p.sim.loss.half_width_95), num(p.analytic.latency * 1e3), num(p.sim.latency.mean * 1e3),
                 num(p.sim.latency.half_width_95 * 1e3), loss_ok ? "1" : "0",
                 p.sim.latency.covers(p.analytic.latency) ? "1" : "0"});
    }
    res.files.push_back(path);
    return res;
}

// Comparisons

struct SchemeOutcome {
    double throughput = 0.0;
    int unserved = 0;
    int violations = 0;
    std::vector<double> per_user;
};

struct TrialOutcome {
    bool ok = false;
    std::vector<SchemeOutcome> schemes;  // in scheme_names() order
    std::vector<DualIterate> trace;
    Scenario scenario;
    Assignment proposed;
    std::vector<Assignment> benchmarks;
};

int violating_links(const ObjectiveReport& r) {
    std::vector<std::pair<int, int>> seen;
    for (const auto& v : r.violations) seen.emplace_back(v.user, v.station);
    std::sort(seen.begin(), seen.end());
    return static_cast<int>(std::unique(seen.begin(), seen.end()) - seen.begin());
}

const std::vector<std::pair<MsScheme, BaScheme>> kBenchmarks = {
    {MsScheme::MatchingDegree, BaScheme::WaterFilling},
    {MsScheme::MatchingDegree, BaScheme::Even},
    {MsScheme::Sinr, BaScheme::WaterFilling},
    {MsScheme::Sinr, BaScheme::Even},
};

TrialOutcome run_trial(const Scenario& s, bool keep_details) {
    TrialOutcome out;
    const Solution sol = solve(s, 1);
    SchemeOutcome p;
    p.throughput = sol.report.total;
    p.unserved = static_cast<int>(sol.assignment.unserved.size());
    p.violations = violating_links(sol.report);
    p.per_user = sol.report.per_user;
    out.schemes.push_back(std::move(p));
    for (const auto& [ms, ba] : kBenchmarks) {
        const auto b = benchmark_assign(s, ms, ba);
        SchemeOutcome o;
        o.throughput = b.report.total;
        o.violations = violating_links(b.report);
        o.per_user = b.report.per_user;
        out.schemes.push_back(std::move(o));
        if (keep_details) out.benchmarks.push_back(b.assignment);
    }
    if (keep_details) {
        out.trace = sol.dual.trace;
        out.scenario = s;
        out.proposed = sol.assignment;
    }
    out.ok = true;
    return out;
}

GenerationConfig apply_point(GenerationConfig g, ExperimentKind kind, double value) {
    switch (kind) {
        case ExperimentKind::SweepBs: g.num_stations = static_cast<int>(std::lround(value)); break;
        case ExperimentKind::SweepMu: g.num_users = static_cast<int>(std::lround(value)); break;
        case ExperimentKind::SweepTau: g.tau = tau_range(value); break;
        default: break;
    }
    return g;
}

const char* sweep_variable(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::SweepBs: return "num_stations";
        case ExperimentKind::SweepMu: return "num_users";
        case ExperimentKind::SweepTau: return "mean_tau";
        default: return "none";
    }
}

ExperimentResult run_comparison(const ExperimentSpec& spec, const std::vector<double>& grid) {
    const int trials = effective_trials(spec);
    const std::size_t n = grid.size() * static_cast<std::size_t>(trials);
    std::vector<TrialOutcome> outcomes(n);
    parallel_for(n, spec.threads, [&](std::size_t k) {
        const std::size_t g = k / static_cast<std::size_t>(trials);
        const int t = static_cast<int>(k % static_cast<std::size_t>(trials));
        GenerationConfig cfg = apply_point(spec.generation, spec.kind, grid[g]);
        cfg.seed = trial_seed(spec.seed, t);
        try {
            outcomes[k] = run_trial(generate_scenario(cfg), false);
        } catch (const Error&) {
            outcomes[k].ok = false;
        }
    });

    ExperimentResult res;
    const auto names = scheme_names();
    const auto path = prepare(spec, std::string(to_string(spec.kind)) + ".csv");
    CsvWriter csv(path, {"sweep_variable", "sweep_value", "scheme", "metric", "mean", "ci_half_width", "trials",
                         "flagged"});
    for (std::size_t g = 0; g < grid.size(); ++g) {
        int flagged = 0;
        int unserved = 0;
        std::vector<std::vector<double>> thr(names.size()), uns(names.size()), vio(names.size());
        for (int t = 0; t < trials; ++t) {
            const auto& o = outcomes[g * static_cast<std::size_t>(trials) + static_cast<std::size_t>(t)];
            if (!o.ok) {
                ++flagged;
                continue;
            }
            unserved += o.schemes[0].unserved;
            for (std::size_t s = 0; s < names.size(); ++s) {
                thr[s].push_back(o.schemes[s].throughput);
                uns[s].push_back(o.schemes[s].unserved);
                vio[s].push_back(o.schemes[s].violations);
            }
        }
        res.unserved.push_back(unserved);
        for (std::size_t s = 0; s < names.size(); ++s) {
            const std::pair<const char*, std::vector<double>*> metrics[] = {
                {"throughput", &thr[s]}, {"unserved", &uns[s]}, {"violating_links", &vio[s]}};
            for (const auto& [metric, values] : metrics) {
                const int used = static_cast<int>(values->size());
                const SimEstimate e = summarize(*values);
                ResultRow row{grid[g], names[s], metric, e.mean, e.half_width_95, used, flagged};
                csv.row({sweep_variable(spec.kind), num(row.sweep_value), row.scheme, row.metric, num(row.mean),
                         num(row.ci_half_width), std::to_string(row.trials), std::to_string(row.flagged)});
                res.rows.push_back(std::move(row));
            }
        }
    }
    res.files.push_back(path);
    return res;
}

Scenario spec_scenario(const ExperimentSpec& spec, int trial) {
    if (spec.scenario) return load_scenario(*spec.scenario);
    GenerationConfig cfg = spec.generation;
    cfg.seed = trial_seed(spec.seed, trial);
    return generate_scenario(cfg);
}

ExperimentResult run_rate_cdf(const ExperimentSpec& spec) {
    const int trials = spec.scenario ? 1 : effective_trials(spec);
    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
    parallel_for(outcomes.size(), spec.threads, [&](std::size_t t) {
        outcomes[t] = run_trial(spec_scenario(spec, static_cast<int>(t)), false);
    });
    const auto names = scheme_names();
    ExperimentResult res;
    const auto path = prepare(spec, "rate-cdf.csv");
    CsvWriter csv(path, {"scheme", "rate_msg_per_s", "cdf"});
    for (std::size_t s = 0; s < names.size(); ++s) {
        std::vector<double> rates;
        for (const auto& o : outcomes) rates.insert(rates.end(), o.schemes[s].per_user.begin(), o.schemes[s].per_user.end());
        std::sort(rates.begin(), rates.end());
        for (std::size_t k = 0; k < rates.size(); ++k) {
            csv.row({names[s], num(rates[k]), num(static_cast<double>(k + 1) / static_cast<double>(rates.size()))});
        }
        const SimEstimate e = summarize(rates);
        res.rows.push_back({0.0, names[s], "per_user_rate", e.mean, e.half_width_95, trials, 0});
    }
    res.files.push_back(path);
    return res;
}

ExperimentResult run_single(const ExperimentSpec& spec) {
    const Scenario s = spec_scenario(spec, 0);
    const TrialOutcome o = run_trial(s, true);
    const auto names = scheme_names();
    const std::size_t J = s.num_stations();
    ExperimentResult res;
    const auto path = prepare(spec, "single-run.csv");
    {
        CsvWriter csv(path, {"scheme", "user", "station", "mode", "bandwidth_hz", "rate_msg_per_s", "latency_ms",
                             "loss", "min_rate_msg_per_s"});
        for (std::size_t k = 0; k < names.size(); ++k) {
            const Assignment& a = k == 0 ? o.proposed : o.benchmarks[k - 1];
            const Choices c = a.choices();
            for (std::size_t i = 0; i < s.num_users(); ++i) {
                const auto& u = s.users[i];
                if (c[i] < 0) {
                    csv.row({names[k], std::to_string(u.id), "-1", "none", "0", "0", "nan", "nan", num(u.min_rate)});
                    continue;
                }
                const std::size_t j = station_of(c[i], J);
                const Mode m = mode_of(c[i], J);
                std::string latency = "inf", loss = "1";
                try {
                    const auto q = link_metrics(u, s.links(i, j), a.z(i, j), m, s.system, s.optimizer.variance_model);
                    latency = num(q.total_latency * 1e3);
                    loss = num(q.loss_ratio);
                } catch (const Error&) {
                }
                csv.row({names[k], std::to_string(u.id), std::to_string(s.stations[j].id), to_string(m),
                         num(a.z(i, j)), num(o.schemes[k].per_user[i]), latency, loss, num(u.min_rate)});
            }
            res.rows.push_back({0.0, names[k], "throughput", o.schemes[k].throughput, 0.0, 1, 0});
        }
    }
    const auto conv = prepare(spec, "convergence.csv");
    {
        CsvWriter csv(conv, {"iteration", "max_eta", "dual_value", "primal_objective", "full_objective", "unserved"});
        for (const auto& it : o.trace) {
            const double max_eta = it.eta.empty() ? 0.0 : *std::max_element(it.eta.begin(), it.eta.end());
            csv.row({std::to_string(it.iteration), num(max_eta), num(it.dual_value), num(it.primal_objective),
                     num(it.full_objective), std::to_string(it.unserved)});
        }
    }
    res.trace = o.trace;
    res.unserved.push_back(o.schemes[0].unserved);
    res.files = {path, conv};
    return res;
}

// summarize

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

double to_double(const std::string& s) {
    try {
        return std::stod(s);
    } catch (const std::exception&) {
        return std::nan("");
    }
}

std::map<std::string, std::size_t> columns(const std::vector<std::string>& header) {
    std::map<std::string, std::size_t> m;
    for (std::size_t k = 0; k < header.size(); ++k) m[header[k]] = k;
    return m;
}

void summarize_validation(std::ostream& os, const std::string& name, const std::vector<std::vector<std::string>>& rows) {
    const auto col = columns(rows[0]);
    auto gap_of = [&](const std::vector<std::string>& r, const std::string& a, const std::string& b) {
        const double x = to_double(r[col.at(a)]), y = to_double(r[col.at(b)]);
        return x > 0.0 ? std::abs(x - y) / x : 0.0;
    };
    double max_latency_gap = 0.0, max_loss_gap = 0.0;
    int inside = 0, total = 0;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const auto& r = rows[k];
        ++total;
        if (name == "validate-scq") {
            max_latency_gap = std::max(max_latency_gap, gap_of(r, "analytic_ms", "simulated_ms"));
            inside += r[col.at("within_ci")] == "1";
        } else {
            max_latency_gap = std::max(max_latency_gap, gap_of(r, "analytic_latency_ms", "simulated_latency_ms"));
            if (to_double(r[col.at("analytic_loss")]) > 1e-6) {
                max_loss_gap = std::max(max_loss_gap, gap_of(r, "analytic_loss", "simulated_loss"));
            }
            inside += r[col.at("loss_within_ci")] == "1" && r[col.at("latency_within_ci")] == "1";
        }
    }
    os << name << ": " << total << " points, " << inside << " inside the 95% CI, max latency gap "
       << num(100.0 * max_latency_gap) << "%";
    if (name == "validate-ptq") os << ", max loss gap " << num(100.0 * max_loss_gap) << "%";
    os << '\n';
}

void summarize_comparison(std::ostream& os, const std::string& name, const std::vector<std::vector<std::string>>& rows) {
    const auto col = columns(rows[0]);
    // sweep value -> scheme -> throughput mean, in file order
    std::vector<std::pair<std::string, std::vector<std::pair<std::string, double>>>> table;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const auto& r = rows[k];
        if (r[col.at("metric")] != "throughput") continue;
        const std::string value = r[col.at("sweep_value")];
        if (table.empty() || table.back().first != value) table.push_back({value, {}});
        table.back().second.emplace_back(r[col.at("scheme")], to_double(r[col.at("mean")]));
    }
    os << name << " (" << (rows.size() > 1 ? rows[1][col.at("sweep_variable")] : "") << ")\n";
    char buf[160];
    std::snprintf(buf, sizeof buf, "  %-10s %14s %14s %-12s %8s\n", "value", "proposed", "best bench", "scheme", "gain");
    os << buf;
    for (const auto& [value, schemes] : table) {
        double proposed = 0.0, best = -1.0;
        std::string best_name;
        for (const auto& [scheme, mean] : schemes) {
            if (scheme == "proposed") {
                proposed = mean;
            } else if (mean > best) {
                best = mean;
                best_name = scheme;
            }
        }
        const double gain = best > 0.0 ? 100.0 * (proposed - best) / best : 0.0;
        std::snprintf(buf, sizeof buf, "  %-10s %14.2f %14.2f %-12s %7.1f%%\n", value.c_str(), proposed, best,
                      best_name.c_str(), gain);
        os << buf;
    }
}

}  // namespace

const char* to_string(ExperimentKind k) {
    for (const auto& [kind, name] : kNames) {
        if (kind == k) return name;
    }
    return "unknown";
}

ExperimentKind parse_experiment(const std::string& name) {
    for (const auto& [kind, n] : kNames) {
        if (name == n) return kind;
    }
    throw ConfigError("unknown experiment '" + name + "'");
}

GenerationConfig ExperimentSpec::desk_generation() {
    GenerationConfig g;
    g.num_users = 20;
    g.num_stations = 3;
    return g;
}

int effective_trials(const ExperimentSpec& spec) {
    if (spec.trials > 0) return spec.trials;
    const bool validation = spec.kind == ExperimentKind::ValidateScq || spec.kind == ExperimentKind::ValidatePtq;
    return validation ? 10 : 20;
}

void check(const ExperimentSpec& spec) {
    if (spec.trials < 0) throw ConfigError("trials must be >= 1");
    if (spec.threads < 1) throw ConfigError("threads must be >= 1");
    if (spec.sim_slots < 10) throw ConfigError("sim_slots must be >= 10");
    for (double v : spec.grid) {
        if (!std::isfinite(v)) throw ConfigError("grid values must be finite");
    }
}

std::vector<double> default_grid(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::ValidateScq: return {750, 800, 850, 900, 950, 1000, 1050};
        case ExperimentKind::ValidatePtq: return {1.0e6, 1.1e6, 1.2e6, 1.3e6, 1.4e6, 1.5e6, 1.6e6, 1.7e6, 1.8e6, 1.9e6, 2.0e6};
        case ExperimentKind::SweepBs: return {8, 9, 10, 11, 12, 13};
        case ExperimentKind::SweepMu: return {10, 15, 20, 25, 30};
        case ExperimentKind::SweepTau: return {0.6, 0.7, 0.8, 0.9, 1.0};
        default: return {0.0};
    }
}

std::vector<std::string> scheme_names() {
    std::vector<std::string> names{"proposed"};
    for (const auto& [ms, ba] : kBenchmarks) names.push_back(scheme_name(ms, ba));
    return names;
}

std::uint64_t trial_seed(std::uint64_t master, int trial) {
    Rng rng = make_stream(master, {kTrialStreamTag, static_cast<std::uint64_t>(trial)});
    return rng();
}

Range tau_range(double tau_bar) { return {std::max(2.0 * tau_bar - 1.0, 0.0), 1.0}; }

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    check(spec);
    const auto grid = spec.grid.empty() ? default_grid(spec.kind) : spec.grid;
    switch (spec.kind) {
        case ExperimentKind::ValidateScq: return run_validate_scq(spec, grid);
        case ExperimentKind::ValidatePtq: return run_validate_ptq(spec, grid);
        case ExperimentKind::RateCdf: return run_rate_cdf(spec);
        case ExperimentKind::SingleRun: return run_single(spec);
        default: break;
    }
    if (!is_comparison(spec.kind)) throw ConfigError("unsupported experiment");
    return run_comparison(spec, grid);
}

std::string summarize_results(const std::filesystem::path& dir) {
    std::ostringstream os;
    if (!std::filesystem::is_directory(dir)) throw Error("not a directory: " + dir.string());
    int found = 0;
    for (const auto& [kind, name] : kNames) {
        const auto path = dir / (std::string(name) + ".csv");
        if (!std::filesystem::exists(path)) continue;
        const auto rows = read_csv(path);
        if (rows.empty()) continue;
        ++found;
        if (kind == ExperimentKind::ValidateScq || kind == ExperimentKind::ValidatePtq) {
            summarize_validation(os, name, rows);
        } else if (is_comparison(kind)) {
            summarize_comparison(os, name, rows);
        } else if (kind == ExperimentKind::RateCdf || kind == ExperimentKind::SingleRun) {
            const auto col = columns(rows[0]);
            const std::size_t rate_col = col.at("rate_msg_per_s");
            std::map<std::string, std::vector<double>> per_scheme;
            std::vector<std::string> order;
            for (std::size_t k = 1; k < rows.size(); ++k) {
                const auto& scheme = rows[k][col.at("scheme")];
                if (!per_scheme.count(scheme)) order.push_back(scheme);
                per_scheme[scheme].push_back(to_double(rows[k][rate_col]));
            }
            os << name << '\n';
            for (const auto& scheme : order) {
                auto v = per_scheme[scheme];
                std::sort(v.begin(), v.end());
                double total = 0.0;
                for (double x : v) total += x;
                char buf[160];
                std::snprintf(buf, sizeof buf, "  %-12s users %5zu  total %12.2f  median %10.2f\n", scheme.c_str(),
                              v.size(), total, v[v.size() / 2]);
                os << buf;
            }
        }
    }
    if (found == 0) return "no results in " + dir.string() + "\n";
    return os.str();
}

}  // namespace hsbnet
