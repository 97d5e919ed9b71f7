#include "hsbnet/simulator.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "hsbnet/error.hpp"
#include "hsbnet/parallel.hpp"

namespace hsbnet {

void check(const SimConfig& cfg) {
    if (cfg.warmup_slots < 0) throw ConfigError("warmup_slots must be >= 0");
    if (cfg.num_slots <= cfg.warmup_slots) throw ConfigError("num_slots must exceed warmup_slots");
    if (cfg.replications < 1) throw ConfigError("replications must be >= 1");
}

SimConfig sim_config(long long num_slots, int replications, std::uint64_t seed, int threads) {
    SimConfig cfg;
    cfg.num_slots = num_slots;
    cfg.warmup_slots = num_slots / 10;
    cfg.replications = replications;
    cfg.seed = seed;
    cfg.threads = threads;
    return cfg;
}

bool SimEstimate::covers(double value, double slack) const {
    return std::abs(value - mean) <= half_width_95 + slack;
}

SimEstimate summarize(std::vector<double> values) {
    SimEstimate e;
    e.samples = static_cast<long long>(values.size());
    if (values.empty()) return e;
    const double n = static_cast<double>(values.size());
    e.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - e.mean) * (v - e.mean);
        const double sd = std::sqrt(ss / (n - 1.0));
        const boost::math::students_t dist(n - 1.0);
        e.half_width_95 = boost::math::quantile(dist, 0.975) * sd / std::sqrt(n);
    }
    e.per_replication = std::move(values);
    return e;
}

// Sampling

double sample_exponential(double rate, Rng& rng) { return -std::log1p(-uniform01(rng)) / rate; }

long long sample_poisson(double mean, Rng& rng) {
    if (mean <= 0.0) return 0;
    if (mean > 30.0) {
        std::poisson_distribution<long long> dist(mean);
        return dist(rng);
    }
    // Inversion by sequential search.
    const double u = uniform01(rng);
    double p = std::exp(-mean);
    double cdf = p;
    long long k = 0;
    while (u >= cdf && k < 10'000) {
        ++k;
        p *= mean / static_cast<double>(k);
        cdf += p;
        if (p == 0.0 && cdf < u) break;
    }
    return k;
}

double sample_standard_normal(Rng& rng) {
    // Box-Muller, one variate per call.
    const double u1 = 1.0 - uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// SCQ

double simulate_scq_replication(const MobileUser& user, long long packets, long long warmup, Rng& rng) {
    double arrival = 0.0;
    double last_departure = 0.0;
    double sum = 0.0;
    for (long long n = 0; n < packets; ++n) {
        arrival += sample_exponential(user.arrival_rate, rng);
        const bool matching = uniform01(rng) < user.tau;
        const double service = sample_exponential(matching ? user.mu_match : user.mu_mismatch, rng);
        const double start = std::max(arrival, last_departure);
        last_departure = start + service;
        if (n >= warmup) sum += last_departure - arrival;
    }
    return sum / static_cast<double>(packets - warmup);
}

SimEstimate simulate_scq(const MobileUser& user, const SimConfig& cfg) {
    check(cfg);
    const double rho = user.arrival_rate *
                       (user.tau / user.mu_match + (1.0 - user.tau) / user.mu_mismatch);
    if (rho >= 1.0) throw UnstableQueueError(rho);
    std::vector<double> per(static_cast<std::size_t>(cfg.replications));
    parallel_for(per.size(), cfg.threads, [&](std::size_t r) {
        Rng rng = make_stream(cfg.seed, {kScqStreamTag, r});
        per[r] = simulate_scq_replication(user, cfg.num_slots, cfg.warmup_slots, rng);
    });
    return summarize(std::move(per));
}

// PTQ

PtqStep ptq_step(int queue, long long departures, long long arrivals, int F) {
    PtqStep s;
    const long long remaining = std::max<long long>(queue - departures, 0);
    s.departed = queue - remaining;
    const long long filled = remaining + arrivals;
    s.next = static_cast<int>(std::min<long long>(filled, F));
    s.dropped = filled - s.next;
    return s;
}

double PtqReplication::loss() const {
    return measured_arrivals > 0 ? static_cast<double>(measured_drops) / static_cast<double>(measured_arrivals) : 0.0;
}

double PtqReplication::latency(double slot_length) const {
    if (measured_slots == 0) return 0.0;
    const double mean_queue = measured_queue_sum / static_cast<double>(measured_slots);
    const double accepted = static_cast<double>(measured_arrivals - measured_drops);
    if (mean_queue <= 0.0) return 0.0;
    if (accepted <= 0.0) return std::numeric_limits<double>::infinity();
    const double effective_rate = accepted / (static_cast<double>(measured_slots) * slot_length);
    return mean_queue / effective_rate;
}

double PtqReplication::drops_per_slot() const {
    return measured_slots > 0 ? static_cast<double>(measured_drops) / static_cast<double>(measured_slots) : 0.0;
}

PtqReplication simulate_ptq_replication(const ArrivalSpec& arrival, const DepartureSpec& departure, int F,
                                        long long slots, long long warmup, Rng& rng, std::vector<int>* path) {
    PtqReplication rep;
    const double mean_arrivals = arrival.mean_per_slot();
    const double capacity_scale = departure.slot_length * departure.bandwidth / departure.packet_bits;
    int q = 0;
    if (path) path->reserve(static_cast<std::size_t>(slots));
    for (long long t = 0; t < slots; ++t) {
        long long d = 0;
        if (capacity_scale > 0.0) {
            const double sinr_db = departure.mean_sinr_db + departure.sinr_std_db * sample_standard_normal(rng);
            const double gamma = std::pow(10.0, sinr_db / 10.0);
            d = static_cast<long long>(std::floor(capacity_scale * std::log2(1.0 + gamma)));
        }
        const long long a = sample_poisson(mean_arrivals, rng);
        const PtqStep step = ptq_step(q, d, a, F);
        assert(step.next >= 0 && step.next <= F);
        q = step.next;
        rep.arrivals += a;
        rep.departures += step.departed;
        rep.drops += step.dropped;
        if (t >= warmup) {
            ++rep.measured_slots;
            rep.measured_arrivals += a;
            rep.measured_drops += step.dropped;
            rep.measured_queue_sum += q;
        }
        if (path) path->push_back(q);
    }
    rep.final_queue = q;
    return rep;
}

PtqEstimate simulate_ptq(const ArrivalSpec& arrival, const DepartureSpec& departure, int F, const SimConfig& cfg) {
    check(cfg);
    if (F < 1) throw ConfigError("buffer size must be >= 1");
    std::vector<PtqReplication> reps(static_cast<std::size_t>(cfg.replications));
    parallel_for(reps.size(), cfg.threads, [&](std::size_t r) {
        Rng rng = make_stream(cfg.seed, {kPtqStreamTag, r});
        reps[r] = simulate_ptq_replication(arrival, departure, F, cfg.num_slots, cfg.warmup_slots, rng);
    });
    std::vector<double> loss, latency, drops;
    for (const auto& r : reps) {
        loss.push_back(r.loss());
        latency.push_back(r.latency(arrival.slot_length));
        drops.push_back(r.drops_per_slot());
    }
    return {summarize(std::move(loss)), summarize(std::move(latency)), summarize(std::move(drops))};
}

// Validation

ValidationReport validate_link(const MobileUser& user, const LinkModel& link, double bandwidth, Mode mode,
                               const SystemConfig& sys, const SimConfig& cfg, VarianceModel model) {
    ValidationReport rep;
    rep.mode = mode;
    const LinkQueueMetrics analytic = link_metrics(user, link, bandwidth, mode, sys, model);
    rep.analytic_loss = analytic.loss_ratio;
    rep.analytic_latency = analytic.total_latency;

    const ArrivalSpec arrival{ptq_arrival_rate(user, mode), sys.slot_length};
    const PtqEstimate ptq = simulate_ptq(arrival, departure_spec(link, bandwidth, sys), sys.buffer_size, cfg);
    rep.simulated_loss = ptq.loss;
    rep.simulated_latency = ptq.latency;
    if (mode == Mode::SemCom) {
        const SimEstimate scq = simulate_scq(user, cfg);
        std::vector<double> total(ptq.latency.per_replication.size());
        for (std::size_t r = 0; r < total.size(); ++r) {
            total[r] = ptq.latency.per_replication[r] + scq.per_replication[r];
        }
        rep.simulated_latency = summarize(std::move(total));
    }

    auto relative = [](double gap, double ref) { return ref != 0.0 ? gap / std::abs(ref) : gap; };
    rep.loss_gap = std::abs(rep.analytic_loss - rep.simulated_loss.mean);
    rep.loss_relative_gap = relative(rep.loss_gap, rep.analytic_loss);
    rep.latency_gap = std::abs(rep.analytic_latency - rep.simulated_latency.mean);
    rep.latency_relative_gap = relative(rep.latency_gap, rep.analytic_latency);
    const bool both_negligible = rep.analytic_loss < 1e-6 && rep.simulated_loss.mean < 1e-6;
    rep.loss_pass = both_negligible || rep.simulated_loss.covers(rep.analytic_loss);
    rep.latency_pass = rep.simulated_latency.covers(rep.analytic_latency);
    return rep;
}

}  // namespace hsbnet
