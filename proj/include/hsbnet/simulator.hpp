#pragma once

#include <cstdint>
#include <vector>

#include "hsbnet/queueing.hpp"
#include "hsbnet/rng.hpp"
#include "hsbnet/scenario.hpp"

namespace hsbnet {

/// Monte Carlo horizon. For the SCQ `num_slots` counts packets, for the PTQ it counts slots.
struct SimConfig {
    long long num_slots = 1'000'000;
    long long warmup_slots = 100'000;
    int replications = 10;
    std::uint64_t seed = 1;
    int threads = 1;
};

/// Throws ConfigError unless num_slots > warmup_slots >= 0 and replications >= 1.
void check(const SimConfig& cfg);

/// SimConfig with the default 10% warmup.
SimConfig sim_config(long long num_slots, int replications, std::uint64_t seed, int threads = 1);

struct SimEstimate {
    double mean = 0.0;
    double half_width_95 = 0.0;  // Student-t half-width across replications
    long long samples = 0;       // replications merged
    std::vector<double> per_replication;

    bool covers(double value, double slack = 0.0) const;
};

/// Mean and 95% t-interval over per-replication values.
SimEstimate summarize(std::vector<double> per_replication);

/// Replication r draws from make_stream(seed, {tag, r}); tags keep SCQ and PTQ apart.
inline constexpr std::uint64_t kScqStreamTag = 0x5C0;
inline constexpr std::uint64_t kPtqStreamTag = 0x970;

/// Event-driven FIFO M/G/1 run of the semantic-coding queue: mean packet sojourn time (s).
SimEstimate simulate_scq(const MobileUser& user, const SimConfig& cfg);

/// Sojourn times of a single replication, for tests and custom estimators.
double simulate_scq_replication(const MobileUser& user, long long packets, long long warmup, Rng& rng);

struct PtqStep {
    int next = 0;
    long long dropped = 0;
    long long departed = 0;
};

/// Q' = min(max(Q - D, 0) + A, F): departures leave first, then arrivals enter.
PtqStep ptq_step(int queue, long long departures, long long arrivals, int F);

/// Counters of one PTQ replication. Totals cover every slot; `measured_*` skip warmup.
struct PtqReplication {
    long long arrivals = 0;
    long long departures = 0;
    long long drops = 0;
    int final_queue = 0;
    long long measured_slots = 0;
    long long measured_arrivals = 0;
    long long measured_drops = 0;
    double measured_queue_sum = 0.0;  // sum of end-of-slot queue lengths

    double loss() const;
    double latency(double slot_length) const;
    double drops_per_slot() const;
};

/// `path`, when given, receives the end-of-slot queue length of every slot.
PtqReplication simulate_ptq_replication(const ArrivalSpec& arrival, const DepartureSpec& departure, int F,
                                        long long slots, long long warmup, Rng& rng,
                                        std::vector<int>* path = nullptr);

struct PtqEstimate {
    SimEstimate loss;
    SimEstimate latency;
    SimEstimate drops_per_slot;
};

PtqEstimate simulate_ptq(const ArrivalSpec& arrival, const DepartureSpec& departure, int F, const SimConfig& cfg);

/// Analytic vs simulated metrics of one link.
struct ValidationReport {
    Mode mode = Mode::BitCom;
    double analytic_loss = 0.0;
    double analytic_latency = 0.0;  // SCQ + PTQ
    SimEstimate simulated_loss;
    SimEstimate simulated_latency;
    double loss_gap = 0.0;            // |analytic - simulated|
    double loss_relative_gap = 0.0;
    double latency_gap = 0.0;
    double latency_relative_gap = 0.0;
    bool loss_pass = false;
    bool latency_pass = false;
    bool pass() const { return loss_pass && latency_pass; }
};

/// Runs both queues (SCQ only in SemCom mode) and checks the analytic values fall inside
/// the simulated 95% intervals. Loss ratios below 1e-6 on both sides count as agreement.
ValidationReport validate_link(const MobileUser& user, const LinkModel& link, double bandwidth, Mode mode,
                               const SystemConfig& sys, const SimConfig& cfg,
                               VarianceModel model = VarianceModel::Mixture);

/// Sampling helpers shared with the experiment runner.
double sample_exponential(double rate, Rng& rng);
long long sample_poisson(double mean, Rng& rng);
double sample_standard_normal(Rng& rng);

}  // namespace hsbnet
