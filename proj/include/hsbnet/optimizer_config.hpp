#pragma once

namespace hsbnet {

/// Second moment used for the semantic-coding service time.
enum class VarianceModel {
    Mixture,      ///< hyperexponential: E[I^2] = 2 tau/mu_mat^2 + 2 (1-tau)/mu_mis^2
    WeightedSum,  ///< I treated as tau I_mat + (1-tau) I_mis of independent exponentials
};

/// Solver and benchmark knobs carried in the scenario file's "optimizer" block.
struct OptimizerConfig {
    int max_iterations = 200;           // V
    double stepsize_scale = 1e-6;       // epsilon(l) = stepsize_scale / l
    double tolerance = 1e-12;           // stop when max |eta(l+1) - eta(l)| falls below
    double bisection_resolution_hz = 1e3;
    double bracket_factor = 10.0;       // bisection upper bound = bracket_factor * Z_j
    double tau_threshold = 0.8;         // MS-I
    double sinr_threshold_db = 6.0;     // MS-II
    VarianceModel variance_model = VarianceModel::Mixture;
    /// Single-user reassignment passes after the dual loop (0 disables).
    int local_search_passes = 20;

    bool operator==(const OptimizerConfig&) const = default;
};

}  // namespace hsbnet
