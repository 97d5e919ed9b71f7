// hsbnet command-line front end: scenario generation, experiments and result summaries.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hsbnet/error.hpp"
#include "hsbnet/experiment.hpp"
#include "hsbnet/scenario.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kValidation = 2, kRuntime = 3 };

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hybrid semantic/bit network analysis and optimization"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Draw a random scenario and write it as JSON");
    int gen_mus = 200, gen_bss = 10;
    std::uint64_t gen_seed = 42;
    double gen_radius = 300.0, gen_kappa = hsbnet::GenerationConfig{}.interference_factor;
    std::string gen_b2m = "linear";
    std::string gen_out;
    gen->add_option("--mus", gen_mus, "Number of mobile users")->capture_default_str()->check(CLI::PositiveNumber);
    gen->add_option("--bss", gen_bss, "Number of base stations")->capture_default_str()->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_seed, "Generation seed")->capture_default_str();
    gen->add_option("--radius", gen_radius, "Disk radius in meters")->capture_default_str();
    gen->add_option("--interference", gen_kappa, "Interference factor applied to other users' power")
        ->capture_default_str();
    gen->add_option("--b2m", gen_b2m, "B2M family")->check(CLI::IsMember({"linear", "piecewise"}))->capture_default_str();
    gen->add_option("--out", gen_out, "Output scenario file")->required();

    // run
    auto* run = app.add_subcommand("run", "Run an experiment and write CSV files");
    std::string experiment = "single-run", scenario_path, out_dir = "results";
    std::uint64_t run_seed = 1;
    int trials = 0, threads = 1, run_mus = 0, run_bss = 0;
    long long slots = 1'000'000;
    std::vector<double> grid;
    run->add_option("--experiment", experiment,
                    "validate-scq | validate-ptq | sweep-bs | sweep-mu | sweep-tau | rate-cdf | single-run")
        ->capture_default_str();
    run->add_option("--scenario", scenario_path, "Scenario JSON for single-run and rate-cdf")->check(CLI::ExistingFile);
    run->add_option("--seed", run_seed, "Master seed")->capture_default_str();
    run->add_option("--out", out_dir, "Output directory")->capture_default_str();
    run->add_option("--trials", trials,
                    "Scenario draws per grid point, or replications for validation (0: 20 draws / 10 replications)")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    run->add_option("--threads", threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    run->add_option("--slots", slots, "Simulated slots (packets for the SCQ) per replication")->capture_default_str();
    run->add_option("--grid", grid, "Sweep values, comma separated (default depends on the experiment)")->delimiter(',');
    run->add_option("--mus", run_mus, "Users per generated scenario (default 20)");
    run->add_option("--bss", run_bss, "Stations per generated scenario (default 3)");

    // summarize
    auto* sum = app.add_subcommand("summarize", "Print headline metrics of a results directory");
    std::string sum_dir;
    sum->add_option("dir", sum_dir, "Results directory")->required();

    // validate-scenario
    auto* val = app.add_subcommand("validate-scenario", "Check a scenario file against every invariant");
    std::string val_path;
    val->add_option("file", val_path, "Scenario JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*gen) {
            hsbnet::GenerationConfig cfg;
            cfg.num_users = gen_mus;
            cfg.num_stations = gen_bss;
            cfg.seed = gen_seed;
            cfg.radius = gen_radius;
            cfg.interference_factor = gen_kappa;
            cfg.b2m_kind = gen_b2m == "linear" ? hsbnet::B2MFunction::Kind::Linear
                                               : hsbnet::B2MFunction::Kind::PiecewiseLinear;
            hsbnet::save_scenario(hsbnet::generate_scenario(cfg), gen_out);
            std::cout << "wrote " << gen_out << " (" << gen_mus << " users, " << gen_bss << " stations)\n";
        } else if (*run) {
            hsbnet::ExperimentSpec spec;
            spec.kind = hsbnet::parse_experiment(experiment);
            if (!scenario_path.empty()) spec.scenario = scenario_path;
            if (run_mus > 0) spec.generation.num_users = run_mus;
            if (run_bss > 0) spec.generation.num_stations = run_bss;
            spec.grid = grid;
            spec.trials = trials;
            spec.seed = run_seed;
            spec.threads = threads;
            spec.sim_slots = slots;
            spec.out_dir = out_dir;
            const auto result = hsbnet::run_experiment(spec);
            for (const auto& f : result.files) std::cout << "wrote " << f.string() << '\n';
        } else if (*sum) {
            std::cout << hsbnet::summarize_results(sum_dir);
        } else if (*val) {
            hsbnet::load_scenario(val_path);
            std::cout << val_path << ": ok\n";
        }
    } catch (const hsbnet::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kValidation;
    } catch (const hsbnet::ParseError& e) {
        std::cerr << e.what() << '\n';
        return kValidation;
    } catch (const hsbnet::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntime;
    }
    return kOk;
}
