#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "hsbnet/grid.hpp"
#include "hsbnet/queueing.hpp"
#include "hsbnet/scenario.hpp"

namespace hsbnet {

inline constexpr double kInfiniteBandwidth = std::numeric_limits<double>::infinity();

/// Minimum bandwidth (Hz) of one link in one mode; +inf marks an unreachable requirement.
struct ModeThresholds {
    double rate = 0.0;
    double latency = 0.0;
    double loss = 0.0;
    double th = 0.0;  // max of the three

    bool finite() const { return th < kInfiniteBandwidth; }
    bool operator==(const ModeThresholds&) const = default;
};

struct BandwidthThresholds {
    Grid<ModeThresholds> semcom;  // U x J
    Grid<ModeThresholds> bitcom;
    Grid<double> semcom_rate;     // mean message rate at semcom(i, j).th, 0 when infinite
    Grid<double> bitcom_rate;

    std::size_t num_users() const { return semcom.rows(); }
    std::size_t num_stations() const { return semcom.cols(); }
    const ModeThresholds& at(std::size_t i, std::size_t j, Mode m) const {
        return m == Mode::SemCom ? semcom(i, j) : bitcom(i, j);
    }
    double rate_at(std::size_t i, std::size_t j, Mode m) const {
        return m == Mode::SemCom ? semcom_rate(i, j) : bitcom_rate(i, j);
    }
};

/// Bandwidth at which the mean message rate reaches the user's minimum rate.
double min_bandwidth_rate(const MobileUser& user, const LinkModel& link, Mode mode);

enum class QosTarget { Latency, Loss };

/// Smallest z in (0, z_hi] meeting the latency or loss budget, found by bisection to
/// `resolution` Hz. The returned z satisfies the target; z - resolution does not.
/// Returns +inf when z_hi misses the target, and for SemCom latency when the coding queue
/// alone exceeds the budget or is unstable.
double min_bandwidth_qos(const MobileUser& user, const LinkModel& link, Mode mode, QosTarget target,
                         const SystemConfig& sys, double z_hi, double resolution,
                         VarianceModel model = VarianceModel::Mixture);

/// All thresholds of a scenario, evaluated in parallel over links.
BandwidthThresholds compute_thresholds(const Scenario& s, int threads = 1);

/// Extended station index: j' < J means SemCom at j', j' >= J means BitCom at j' - J.
/// -1 marks an unserved user.
using Choices = std::vector<int>;

inline int extended_index(std::size_t j, Mode m, std::size_t J) {
    return static_cast<int>(m == Mode::SemCom ? j : j + J);
}
inline std::size_t station_of(int jp, std::size_t J) { return static_cast<std::size_t>(jp) % J; }
inline Mode mode_of(int jp, std::size_t J) {
    return static_cast<std::size_t>(jp) < J ? Mode::SemCom : Mode::BitCom;
}

/// Per-user allowed extended indices (U x 2J).
using PreferenceLists = Grid<std::uint8_t>;
PreferenceLists full_preferences(std::size_t users, std::size_t stations);

/// xi(i, j') = rate at threshold - eta_j * threshold; -inf for infinite thresholds.
Grid<double> compute_xi(const BandwidthThresholds& th, const std::vector<double>& eta);

/// Argmax of each xi row over the allowed entries, ties to the lowest index.
/// Rows without a finite allowed entry become -1.
Choices assign_best(const Grid<double>& xi, const PreferenceLists& prefs);

/// Threshold bandwidth user i consumes under choice jp (0 when unserved).
double demand(const BandwidthThresholds& th, std::size_t i, int jp);
/// Sum of threshold demands per station.
std::vector<double> station_load(const BandwidthThresholds& th, const Choices& c);

/// eta_j <- max(eta_j - step * (Z_j - load_j), 0).
std::vector<double> update_multipliers(const std::vector<double>& eta, double step, const BandwidthThresholds& th,
                                       const Choices& c, const std::vector<double>& budgets);

struct RepairLog {
    int removals = 0;
    std::vector<std::string> diagnostics;
};

/// Evicts the largest-demand user of each overloaded station (ascending station order,
/// ties to the lowest user index) by deleting its current entry from `prefs` and
/// re-running its argmax, until no station is overloaded.
Choices repair_feasibility(Choices c, const BandwidthThresholds& th, const Grid<double>& xi,
                           const std::vector<double>& budgets, PreferenceLists& prefs, RepairLog* log = nullptr);

struct DualIterate {
    int iteration = 0;
    std::vector<double> eta;
    double dual_value = 0.0;       // H(eta) at the unrepaired argmax
    double primal_objective = 0.0; // sum of threshold rates after repair
    double full_objective = 0.0;   // message throughput after bandwidth allocation
    int unserved = 0;
};

struct UaMsResult {
    Choices choices;
    int best_iteration = 0;
    bool converged = false;
    std::vector<DualIterate> trace;
    double dual_objective = 0.0;  // throughput of the best dual iterate
    int local_moves = 0;          // reassignments accepted by the local search
};

/// Throughput of `c` once bandwidth is allocated.
double allocated_throughput(const Scenario& s, const Choices& c, const BandwidthThresholds& th);

/// Moves one served user at a time to any other finite-threshold entry, or serves an unserved
/// user, whenever the budgets still hold and the allocated throughput strictly increases.
/// Users are scanned in index order; stops after a pass without moves or `max_passes` passes.
int local_search(const Scenario& s, const BandwidthThresholds& th, Choices& c, int max_passes);

/// Alternates argmax, repair and multiplier updates; keeps the feasible iterate with the
/// highest allocated throughput, then polishes it with local_search.
UaMsResult solve_ua_ms(const Scenario& s, const BandwidthThresholds& th);

struct Assignment {
    Grid<std::uint8_t> x;  // U x J association
    Grid<std::uint8_t> y;  // 1 = SemCom
    Grid<double> z;        // Hz
    std::vector<int> unserved;
    double objective = 0.0;  // msg/s

    Choices choices() const;
};

Assignment make_assignment(std::size_t users, std::size_t stations, const Choices& c);

/// Per station: maximize the summed mean message rate subject to sum z = Z_j and
/// z >= threshold. Mean rates are concave piecewise linear in z, so filling the steepest
/// remaining segments first is exact. Throws std::logic_error when thresholds exceed Z_j.
Grid<double> allocate_bandwidth(const Scenario& s, const Choices& c, const BandwidthThresholds& th);

struct Violation {
    int user = -1;
    int station = -1;
    std::string constraint;  // single-bs, mode, bandwidth, latency, loss, min-rate
    double value = 0.0;
    double limit = 0.0;
};

struct ObjectiveReport {
    double total = 0.0;
    std::vector<double> per_user;
    std::vector<Violation> violations;
};

/// Throughput of an assignment plus every latency, loss, rate, single-station and
/// budget violation among served users.
ObjectiveReport evaluate_objective(const Scenario& s, const Assignment& a);

struct Solution {
    BandwidthThresholds thresholds;
    UaMsResult dual;
    Assignment assignment;
    ObjectiveReport report;
};

/// Thresholds, dual loop, repair and bandwidth allocation in one call.
Solution solve(const Scenario& s, int threads = 1);

}  // namespace hsbnet
