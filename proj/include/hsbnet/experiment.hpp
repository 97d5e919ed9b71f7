#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hsbnet/optimizer.hpp"
#include "hsbnet/scenario.hpp"

namespace hsbnet {

enum class ExperimentKind { ValidateScq, ValidatePtq, SweepBs, SweepMu, SweepTau, RateCdf, SingleRun };

const char* to_string(ExperimentKind k);
/// Throws ConfigError for unknown names.
ExperimentKind parse_experiment(const std::string& name);

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::SingleRun;
    /// Used by single-run and rate-cdf instead of generating scenarios.
    std::optional<std::filesystem::path> scenario;
    /// Base generation parameters; sweeps override one field per grid point.
    GenerationConfig generation = desk_generation();
    /// Sweep grid; empty selects the default grid of the experiment.
    std::vector<double> grid;
    /// Scenario draws per grid point (comparisons) or replications (validation);
    /// 0 selects 20 draws or 10 replications.
    int trials = 0;
    std::uint64_t seed = 1;
    int threads = 1;
    /// Simulation horizon per replication for validation experiments.
    long long sim_slots = 1'000'000;
    std::filesystem::path out_dir = "results";

    /// 20 users and 3 stations; `num_users`/`num_stations` may be overridden.
    static GenerationConfig desk_generation();
};

/// Throws ConfigError for negative trials, threads < 1, sim_slots < 10 or non-finite grid values.
void check(const ExperimentSpec& spec);

int effective_trials(const ExperimentSpec& spec);

std::vector<double> default_grid(ExperimentKind k);

/// One aggregated value of a comparison sweep.
struct ResultRow {
    double sweep_value = 0.0;
    std::string scheme;
    std::string metric;
    double mean = 0.0;
    double ci_half_width = 0.0;
    int trials = 0;
    int flagged = 0;  // trials that raised an error and were skipped
};

struct ExperimentResult {
    std::vector<ResultRow> rows;
    std::vector<DualIterate> trace;  // single-run only
    std::vector<int> unserved;       // per grid point, summed over trials (proposed scheme)
    std::vector<std::filesystem::path> files;
};

/// Scheme identifiers in output order: "proposed" then the four benchmarks.
std::vector<std::string> scheme_names();

/// Seed of trial t. Shared by all grid points so sweeps compare paired scenarios.
std::uint64_t trial_seed(std::uint64_t master, int trial);

/// Matching-degree range with mean tau_bar: [2 tau_bar - 1, 1] clipped at 0.
Range tau_range(double tau_bar);

/// Runs the experiment and writes its CSV files into spec.out_dir.
ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Headline table of every known result CSV in `dir`; "no results" when there are none.
std::string summarize_results(const std::filesystem::path& dir);

}  // namespace hsbnet
