#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hsbnet/b2m.hpp"
#include "hsbnet/grid.hpp"
#include "hsbnet/optimizer_config.hpp"

namespace hsbnet {

struct Position {
    double x = 0.0;  // m
    double y = 0.0;  // m
    bool operator==(const Position&) const = default;
};

double distance(const Position& a, const Position& b);

struct SystemConfig {
    double slot_length = 1e-3;        // T, s
    double packet_bits = 800.0;       // L, bits
    int buffer_size = 20;             // F, packets
    double latency_budget = 20e-3;    // delta_0, s
    double loss_budget = 0.01;        // theta_0
    long long num_slots = 1'000'000;  // N, simulation horizon

    bool operator==(const SystemConfig&) const = default;
};

struct MobileUser {
    int id = 0;
    Position position;
    double arrival_rate = 1000.0;     // lambda, packets/s
    double tau = 1.0;                 // mean knowledge-matching degree
    double mu_match = 1250.0;         // packets/s
    double mu_mismatch = 1000.0;      // packets/s
    double min_rate = 0.0;            // M^o, msg/s
    double transmit_power_dbm = 20.0;
    double beta_std = 0.1;            // spread of the per-slot matching degree

    bool operator==(const MobileUser&) const = default;
};

struct BaseStation {
    int id = 0;
    Position position;
    double bandwidth = 15e6;  // Z_j, Hz

    bool operator==(const BaseStation&) const = default;
};

struct LinkModel {
    int mu_id = 0;
    int bs_id = 0;
    double mean_sinr_db = 0.0;
    double sinr_std_db = 4.0;
    B2MFunction b2m;
    double rho = 1e-4;  // BitCom msg/bit

    /// Mean SINR in linear scale, 10^(mean_sinr_db / 10).
    double mean_sinr_linear() const;
    /// log2(1 + mean SINR): bit/s per Hz at the mean channel.
    double spectral_efficiency() const;

    bool operator==(const LinkModel&) const = default;
};

/// Immutable network snapshot. `links(i, j)` describes user i towards station j.
struct Scenario {
    SystemConfig system;
    std::vector<MobileUser> users;
    std::vector<BaseStation> stations;
    Grid<LinkModel> links;
    std::uint64_t rng_seed = 0;
    OptimizerConfig optimizer;

    std::size_t num_users() const noexcept { return users.size(); }
    std::size_t num_stations() const noexcept { return stations.size(); }

    bool operator==(const Scenario&) const = default;
};

/// Closed range for uniform draws; lo == hi is a point value.
struct Range {
    double lo = 0.0;
    double hi = 0.0;
    bool operator==(const Range&) const = default;
};

struct GenerationConfig {
    int num_users = 200;
    int num_stations = 10;
    double radius = 300.0;  // m
    std::uint64_t seed = 42;

    SystemConfig system;
    double bandwidth = 15e6;  // per-BS Z_j
    double transmit_power_dbm = 20.0;
    double noise_power_dbm = -111.45;
    double sinr_std_db = 4.0;
    /// Scales the summed received power of the other users into interference.
    double interference_factor = 7.5e-4;

    double arrival_rate = 1000.0;
    double mu_match = 1250.0;
    double mu_mismatch = 1000.0;
    double beta_std = 0.1;
    Range tau{0.6, 1.0};
    Range min_rate{50.0, 100.0};
    Range rho{2e-5, 2e-4};

    B2MFunction::Kind b2m_kind = B2MFunction::Kind::Linear;
    /// Initial B2M slope (msg/bit) per link.
    Range b2m_sigma{2e-4, 1e-3};
    /// Bit-rate knees of the concave template, used when b2m_kind is PiecewiseLinear.
    /// Slope halves after each knee; the function saturates after the last one.
    std::vector<double> b2m_knees{2e6, 6e6, 20e6};

    OptimizerConfig optimizer;
};

/// 34 + 40 log10(d), distance clamped to at least 1 m.
double path_loss_db(double distance_m);

/// Mean SINR (dB) of every user towards every station for the given geometry.
/// interference at station j = factor * sum over other users of their received power.
Grid<double> mean_sinr_db(const std::vector<MobileUser>& users, const std::vector<BaseStation>& stations,
                          double noise_power_dbm, double interference_factor);

/// Deterministic in `cfg` (including seed). Throws ConfigError on bad parameters.
///
/// Every entity class draws from its own seeded stream, so the first J stations (or
/// first U users) of a larger drop coincide with a smaller drop of the same seed.
Scenario generate_scenario(const GenerationConfig& cfg);

/// Throws ValidationError naming the first offending field.
void validate(const Scenario& s);

/// JSON document with top-level keys system/users/stations/links (+ seed, optimizer).
std::string to_json_string(const Scenario& s);
Scenario from_json_string(const std::string& text);

void save_scenario(const Scenario& s, const std::filesystem::path& path);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace hsbnet
