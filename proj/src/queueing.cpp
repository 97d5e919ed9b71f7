#include "hsbnet/queueing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "hsbnet/error.hpp"

namespace hsbnet {

namespace {

constexpr double kPoissonTail = 1e-12;
constexpr double kPoissonMassSlack = 1e-9;
constexpr long kPoissonMaxWindow = 1'000'000;
constexpr double kSteadyResidual = 1e-12;

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// floor(T z log2(1 + gamma) / L) for a fixed linear SINR, tolerant to rounding at integers.
long departures_for(const DepartureSpec& spec, double gamma) {
    const double x = spec.slot_length * spec.bandwidth * std::log2(1.0 + gamma) / spec.packet_bits;
    return static_cast<long>(std::floor(x * (1.0 + 1e-12)));
}

Eigen::VectorXd power_iteration(const Eigen::MatrixXd& omega) {
    const Eigen::Index n = omega.rows();
    Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    const Eigen::MatrixXd t = omega.transpose();
    for (int it = 0; it < 10'000'000; ++it) {
        Eigen::VectorXd next = t * v;
        next /= next.sum();
        const double change = (next - v).cwiseAbs().maxCoeff();
        v = std::move(next);
        if (change < 1e-16) break;
    }
    return v;
}

}  // namespace

const char* to_string(Mode m) { return m == Mode::SemCom ? "SemCom" : "BitCom"; }

// CountPmf

CountPmf::CountPmf(std::vector<double> pmf, double tail) : pmf_(std::move(pmf)), tail_(std::max(tail, 0.0)) {
    suffix_.assign(pmf_.size() + 1, 0.0);
    suffix_[pmf_.size()] = tail_;
    for (std::size_t k = pmf_.size(); k-- > 0;) suffix_[k] = suffix_[k + 1] + pmf_[k];
}

double CountPmf::pmf(long k) const {
    if (k < 0) return 0.0;
    const auto n = static_cast<long>(pmf_.size());
    if (k < n) return pmf_[static_cast<std::size_t>(k)];
    return k == n ? tail_ : 0.0;
}

double CountPmf::sf(long n) const {
    if (n <= 0) return suffix_.empty() ? 0.0 : suffix_[0];
    if (n > static_cast<long>(pmf_.size())) return 0.0;
    return suffix_[static_cast<std::size_t>(n)];
}

double CountPmf::overflow(long c) const {
    double total = 0.0;
    const auto n = static_cast<long>(pmf_.size());
    for (long k = std::max(c + 1, 0L); k < n; ++k) total += static_cast<double>(k - c) * pmf_[static_cast<std::size_t>(k)];
    if (n > c) total += static_cast<double>(n - c) * tail_;
    return total;
}

double CountPmf::mean() const { return overflow(0); }

// Arrivals

double poisson_pmf(const ArrivalSpec& spec, int k) {
    if (k < 0) return 0.0;
    const double a = spec.mean_per_slot();
    if (a <= 0.0) return k == 0 ? 1.0 : 0.0;
    return std::exp(k * std::log(a) - a - std::lgamma(k + 1.0));
}

CountPmf poisson_window(const ArrivalSpec& spec) {
    const double a = spec.mean_per_slot();
    if (!(a >= 0.0) || !std::isfinite(a)) throw NumericalError("Poisson mean must be finite and >= 0");
    long K = 0;
    // P(A > K) = P(K + 1, a) (regularized lower incomplete gamma)
    while (a > 0.0 && boost::math::gamma_p(static_cast<double>(K + 1), a) >= kPoissonTail) {
        if (++K > kPoissonMaxWindow) {
            throw NumericalError("Poisson truncation bound " + std::to_string(kPoissonMaxWindow) + " exceeded");
        }
    }
    std::vector<double> pmf(static_cast<std::size_t>(K + 1));
    double total = 0.0;
    for (long k = 0; k <= K; ++k) {
        pmf[static_cast<std::size_t>(k)] = poisson_pmf(spec, static_cast<int>(k));
        total += pmf[static_cast<std::size_t>(k)];
    }
    if (std::abs(1.0 - total) > kPoissonMassSlack) {
        throw NumericalError("Poisson window K=" + std::to_string(K) + " loses mass " + std::to_string(1.0 - total));
    }
    return CountPmf(std::move(pmf), 1.0 - total);
}

double merged_arrival_rate(double tau, double mu_match, double mu_mismatch) {
    return tau * mu_match + (1.0 - tau) * mu_mismatch;
}

// Semantic-coding queue

ScqAnalysis scq_latency(const MobileUser& user, VarianceModel model) {
    const double tau = user.tau;
    const double m_mat = 1.0 / user.mu_match;
    const double m_mis = 1.0 / user.mu_mismatch;
    ScqAnalysis r;
    r.mean_service = tau * m_mat + (1.0 - tau) * m_mis;
    if (model == VarianceModel::Mixture) {
        r.second_moment = 2.0 * tau * m_mat * m_mat + 2.0 * (1.0 - tau) * m_mis * m_mis;
    } else {
        const double var = std::pow(tau * m_mat, 2) + std::pow((1.0 - tau) * m_mis, 2);
        r.second_moment = r.mean_service * r.mean_service + var;
    }
    r.utilization = user.arrival_rate * r.mean_service;
    if (r.utilization >= 1.0) throw UnstableQueueError(r.utilization);
    r.latency = user.arrival_rate * r.second_moment / (2.0 * (1.0 - r.utilization)) + r.mean_service;
    return r;
}

// Departures

double departure_cdf(const DepartureSpec& spec, int k) {
    if (k < 0) return 0.0;
    if (spec.bandwidth <= 0.0) return 1.0;
    if (spec.sinr_std_db <= 0.0) {
        const long d = departures_for(spec, std::pow(10.0, spec.mean_sinr_db / 10.0));
        return d <= k ? 1.0 : 0.0;
    }
    const double exponent = (k + 1.0) * spec.packet_bits / (spec.slot_length * spec.bandwidth);
    const double threshold = std::expm1(exponent * std::numbers::ln2);
    if (!std::isfinite(threshold)) return 1.0;
    const double threshold_db = 10.0 * std::log10(threshold);
    return standard_normal_cdf((threshold_db - spec.mean_sinr_db) / spec.sinr_std_db);
}

double departure_pmf(const DepartureSpec& spec, int k) {
    if (k < 0) return 0.0;
    return departure_cdf(spec, k) - departure_cdf(spec, k - 1);
}

CountPmf departure_window(const DepartureSpec& spec, int F) {
    std::vector<double> pmf(static_cast<std::size_t>(F));
    double prev = 0.0;
    for (int k = 0; k < F; ++k) {
        const double c = departure_cdf(spec, k);
        pmf[static_cast<std::size_t>(k)] = std::max(c - prev, 0.0);
        prev = c;
    }
    return CountPmf(std::move(pmf), std::max(1.0 - prev, 0.0));
}

// Packet-transmission queue

double PtqChain::mean_queue() const {
    double m = 0.0;
    for (Eigen::Index k = 0; k < alpha.size(); ++k) m += static_cast<double>(k) * alpha[k];
    return m;
}

PtqChain transition_matrix(const CountPmf& A, const CountPmf& D, int F) {
    if (F < 1) throw NumericalError("buffer size must be >= 1");
    PtqChain chain;
    chain.omega = Eigen::MatrixXd::Zero(F + 1, F + 1);
    auto& w = chain.omega;
    for (int a = 0; a <= F; ++a) {
        for (int b = 0; b <= F; ++b) {
            double p = 0.0;
            if (b == 0) {
                p = A.pmf(0) * D.sf(a);
            } else if (a == 0) {
                p = (b < F) ? A.pmf(b) : A.sf(F);
            } else if (b == F) {
                p = A.sf(F) * D.sf(a);
                for (int l = 0; l < a; ++l) p += D.pmf(l) * A.sf(F - a + l);
            } else if (b <= a) {
                p = A.pmf(b) * D.sf(a);
                for (int l = 0; l < b; ++l) p += A.pmf(l) * D.pmf(a - b + l);
            } else {  // 1 <= a < b <= F-1
                p = A.pmf(b) * D.sf(a);
                for (int l = 0; l < a; ++l) p += D.pmf(l) * A.pmf(b - a + l);
            }
            w(a, b) = p;
        }
    }
    return chain;
}

PtqChain transition_matrix(const ArrivalSpec& arrival, const DepartureSpec& departure, int F) {
    return transition_matrix(poisson_window(arrival), departure_window(departure, F), F);
}

Eigen::VectorXd steady_state(const Eigen::MatrixXd& omega) {
    const Eigen::Index n = omega.rows();
    Eigen::MatrixXd system = omega.transpose() - Eigen::MatrixXd::Identity(n, n);
    system.row(n - 1).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs[n - 1] = 1.0;
    Eigen::VectorXd alpha = system.fullPivLu().solve(rhs);

    auto acceptable = [&](Eigen::VectorXd& v) {
        if (!v.allFinite()) return false;
        if (v.minCoeff() < -1e-12) return false;
        v = v.cwiseMax(0.0);
        v /= v.sum();
        return (omega.transpose() * v - v).cwiseAbs().maxCoeff() < kSteadyResidual;
    };
    if (acceptable(alpha)) return alpha;

    alpha = power_iteration(omega);
    if (!alpha.allFinite()) throw NumericalError("steady state: direct solve and power iteration both failed");
    return alpha;
}

double expected_drops(const PtqChain& chain, const CountPmf& A, const CountPmf& D) {
    const int F = chain.buffer_size();
    const auto& alpha = chain.alpha;
    double G = alpha[0] * A.overflow(F);
    for (int l = 1; l <= F; ++l) {
        double inner = 0.0;
        for (int k = 0; k < l; ++k) inner += D.pmf(k) * A.overflow(F - l + k);
        inner += D.sf(l) * A.overflow(F);
        G += alpha[l] * inner;
    }
    return std::max(G, 0.0);
}

PtqMetrics ptq_metrics(const PtqChain& chain, double arrival_rate, double slot_length) {
    PtqMetrics m;
    const double per_slot = arrival_rate * slot_length;
    m.loss = per_slot > 0.0 ? std::clamp(chain.drop_rate / per_slot, 0.0, 1.0) : 0.0;
    m.effective_arrival = arrival_rate * (1.0 - m.loss);
    m.mean_queue = chain.mean_queue();
    if (m.mean_queue <= 0.0) {
        m.latency = 0.0;
    } else if (m.effective_arrival <= 0.0) {
        throw DegenerateQueueError("PTQ admits no packets (loss ratio 1)");
    } else {
        m.latency = m.mean_queue / m.effective_arrival;
    }
    return m;
}

PtqSolution solve_ptq(const CountPmf& arrivals, const CountPmf& departures, double arrival_rate,
                      double slot_length) {
    const int F = static_cast<int>(departures.size());
    PtqSolution s;
    s.chain = transition_matrix(arrivals, departures, F);
    s.chain.alpha = steady_state(s.chain.omega);
    s.chain.cumulative.resize(F + 1);
    double acc = 0.0;
    for (int c = 0; c <= F; ++c) {
        acc += s.chain.alpha[c];
        s.chain.cumulative[c] = acc;
    }
    s.chain.drop_rate = expected_drops(s.chain, arrivals, departures);
    s.metrics = ptq_metrics(s.chain, arrival_rate, slot_length);
    return s;
}

PtqSolution solve_ptq(const ArrivalSpec& arrival, const DepartureSpec& departure, int F) {
    return solve_ptq(poisson_window(arrival), departure_window(departure, F), arrival.rate, arrival.slot_length);
}

// Link level

double ptq_arrival_rate(const MobileUser& user, Mode mode) {
    return mode == Mode::SemCom ? merged_arrival_rate(user.tau, user.mu_match, user.mu_mismatch)
                                : user.arrival_rate;
}

DepartureSpec departure_spec(const LinkModel& link, double bandwidth, const SystemConfig& sys) {
    return {bandwidth, link.mean_sinr_db, link.sinr_std_db, sys.slot_length, sys.packet_bits};
}

LinkQueueMetrics link_metrics(const MobileUser& user, const LinkModel& link, double bandwidth, Mode mode,
                              const SystemConfig& sys, VarianceModel model) {
    LinkQueueMetrics out;
    out.mode = mode;
    if (mode == Mode::SemCom) out.scq_latency = scq_latency(user, model).latency;
    const ArrivalSpec arrival{ptq_arrival_rate(user, mode), sys.slot_length};
    const auto ptq = solve_ptq(arrival, departure_spec(link, bandwidth, sys), sys.buffer_size);
    out.loss_ratio = ptq.metrics.loss;
    out.ptq_latency = ptq.metrics.latency;
    out.total_latency = out.scq_latency + out.ptq_latency;
    out.effective_arrival = ptq.metrics.effective_arrival;
    return out;
}

double mean_message_rate(const MobileUser& user, const LinkModel& link, double bandwidth, Mode mode) {
    if (bandwidth <= 0.0) return 0.0;
    const double bit_rate = bandwidth * link.spectral_efficiency();
    return mode == Mode::SemCom ? user.tau * link.b2m.eval(bit_rate) : link.rho * bit_rate;
}

}  // namespace hsbnet
