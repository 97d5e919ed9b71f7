#pragma once

#include <vector>

#include <Eigen/Dense>

#include "hsbnet/optimizer_config.hpp"
#include "hsbnet/scenario.hpp"

namespace hsbnet {

enum class Mode { SemCom, BitCom };

const char* to_string(Mode m);

/// Poisson packet arrivals per slot.
struct ArrivalSpec {
    double rate = 1000.0;        // packets/s
    double slot_length = 1e-3;   // s
    double mean_per_slot() const { return rate * slot_length; }
};

/// Per-slot departures floor(T z log2(1 + gamma) / L) with gamma Gaussian in dB.
struct DepartureSpec {
    double bandwidth = 0.0;      // z, Hz
    double mean_sinr_db = 0.0;
    double sinr_std_db = 4.0;
    double slot_length = 1e-3;   // s
    double packet_bits = 800.0;  // bits
};

/// Distribution of a non-negative integer count.
///
/// `pmf[k]` holds P(X = k) for k < pmf.size(); all remaining mass `tail` is lumped at
/// X = pmf.size(). Departures use the lump for "at least F", which the queue cannot tell
/// apart; truncated Poisson windows use it for the < 1e-12 residual.
class CountPmf {
public:
    CountPmf() = default;
    explicit CountPmf(std::vector<double> pmf, double tail = 0.0);

    std::size_t size() const noexcept { return pmf_.size(); }
    /// P(X = k); 0 past the stored window, except the lump at size().
    double pmf(long k) const;
    /// P(X >= n).
    double sf(long n) const;
    /// E[(X - c)^+] for c >= 0.
    double overflow(long c) const;
    double mean() const;
    double tail() const noexcept { return tail_; }

private:
    std::vector<double> pmf_;
    std::vector<double> suffix_;  // suffix_[k] = P(X >= k), k <= size
    double tail_ = 0.0;
};

/// (lambda T)^k e^{-lambda T} / k!.
double poisson_pmf(const ArrivalSpec& spec, int k);

/// Poisson window truncated at the smallest K with tail mass below 1e-12.
/// Throws NumericalError if the retained mass misses 1 by more than 1e-9.
CountPmf poisson_window(const ArrivalSpec& spec);

/// Knowledge-matching-weighted output rate of the SCQ, packets/s.
double merged_arrival_rate(double tau, double mu_match, double mu_mismatch);

struct ScqAnalysis {
    double mean_service = 0.0;   // E[I], s
    double second_moment = 0.0;  // E[I^2], s^2
    double utilization = 0.0;    // lambda E[I]
    double latency = 0.0;        // M/G/1 mean sojourn, s
};

/// Pollaczek-Khintchine mean sojourn time of the semantic-coding queue.
/// Throws UnstableQueueError when utilization >= 1.
ScqAnalysis scq_latency(const MobileUser& user, VarianceModel model = VarianceModel::Mixture);

/// P(D = k). Bandwidth 0 gives the point mass at 0.
double departure_pmf(const DepartureSpec& spec, int k);
/// P(D <= k) = P(gamma < 2^{(k+1)L/(Tz)} - 1).
double departure_cdf(const DepartureSpec& spec, int k);
/// P(D = k) for k < F with P(D >= F) lumped at F.
CountPmf departure_window(const DepartureSpec& spec, int F);

/// Finite-buffer PTQ as a discrete-time Markov chain over queue lengths 0..F.
struct PtqChain {
    Eigen::MatrixXd omega;   // row-stochastic (F+1)x(F+1)
    Eigen::VectorXd alpha;   // steady state
    double drop_rate = 0.0;  // G, packets/slot
    Eigen::VectorXd cumulative;  // W^(c) = sum_{l<=c} alpha_l

    int buffer_size() const { return static_cast<int>(omega.rows()) - 1; }
    double mean_queue() const;
};

/// One-step transition matrix from the closed-form case analysis of
/// Q' = min(max(Q - D, 0) + A, F). Only `omega` is filled.
PtqChain transition_matrix(const CountPmf& arrivals, const CountPmf& departures, int F);
PtqChain transition_matrix(const ArrivalSpec& arrival, const DepartureSpec& departure, int F);

/// Solves Omega^T alpha = alpha, sum(alpha) = 1 by a dense solve with one balance equation
/// replaced by the normalization row; falls back to power iteration when the direct
/// solution misses the residual target.
Eigen::VectorXd steady_state(const Eigen::MatrixXd& omega);

/// Mean packets dropped per slot in steady state. `chain.alpha` must be set.
double expected_drops(const PtqChain& chain, const CountPmf& arrivals, const CountPmf& departures);

struct PtqMetrics {
    double loss = 0.0;               // theta
    double latency = 0.0;            // s
    double mean_queue = 0.0;         // E[Q]
    double effective_arrival = 0.0;  // packets/s
};

/// Loss ratio G / (lambda T) and Little's-law latency E[Q] / lambda_eff.
/// Throws DegenerateQueueError when packets are queued but none get through.
PtqMetrics ptq_metrics(const PtqChain& chain, double arrival_rate, double slot_length);

/// Builds the chain, its steady state and drop rate in one go.
struct PtqSolution {
    PtqChain chain;
    PtqMetrics metrics;
};
/// The buffer size F is departures.size(); the departure tail is the mass at F.
PtqSolution solve_ptq(const CountPmf& arrivals, const CountPmf& departures, double arrival_rate,
                      double slot_length);
PtqSolution solve_ptq(const ArrivalSpec& arrival, const DepartureSpec& departure, int F);

struct LinkQueueMetrics {
    Mode mode = Mode::BitCom;
    double loss_ratio = 0.0;
    double ptq_latency = 0.0;
    double scq_latency = 0.0;  // zero for BitCom
    double total_latency = 0.0;
    double effective_arrival = 0.0;
};

/// PTQ arrival rate seen by a link in the given mode.
double ptq_arrival_rate(const MobileUser& user, Mode mode);

DepartureSpec departure_spec(const LinkModel& link, double bandwidth, const SystemConfig& sys);

/// Full latency/loss of a link at bandwidth z. SemCom propagates UnstableQueueError.
LinkQueueMetrics link_metrics(const MobileUser& user, const LinkModel& link, double bandwidth, Mode mode,
                              const SystemConfig& sys, VarianceModel model = VarianceModel::Mixture);

/// Mean message rate at bandwidth z on the mean channel, msg/s.
double mean_message_rate(const MobileUser& user, const LinkModel& link, double bandwidth, Mode mode);

}  // namespace hsbnet
