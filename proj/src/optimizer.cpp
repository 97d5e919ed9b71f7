#include "hsbnet/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hsbnet/error.hpp"
#include "hsbnet/parallel.hpp"

namespace hsbnet {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Metric value at z, +inf when the queue is unstable or degenerate.
double qos_value(const MobileUser& user, const LinkModel& link, double z, Mode mode, QosTarget target,
                 const SystemConfig& sys, VarianceModel model) {
    try {
        const auto m = link_metrics(user, link, z, mode, sys, model);
        return target == QosTarget::Loss ? m.loss_ratio : m.total_latency;
    } catch (const UnstableQueueError&) {
        return kInfiniteBandwidth;
    } catch (const DegenerateQueueError&) {
        return kInfiniteBandwidth;
    }
}

}  // namespace

double min_bandwidth_rate(const MobileUser& user, const LinkModel& link, Mode mode) {
    if (user.min_rate <= 0.0) return 0.0;
    const double se = link.spectral_efficiency();
    if (!(se > 0.0)) return kInfiniteBandwidth;
    if (mode == Mode::BitCom) return user.min_rate / (link.rho * se);
    if (user.tau <= 0.0) return kInfiniteBandwidth;
    try {
        return link.b2m.invert(user.min_rate / user.tau) / se;
    } catch (const UnreachableRateError&) {
        return kInfiniteBandwidth;
    }
}

double min_bandwidth_qos(const MobileUser& user, const LinkModel& link, Mode mode, QosTarget target,
                         const SystemConfig& sys, double z_hi, double resolution, VarianceModel model) {
    const double budget = target == QosTarget::Loss ? sys.loss_budget : sys.latency_budget;
    if (mode == Mode::SemCom) {
        try {
            const double coding = scq_latency(user, model).latency;
            if (target == QosTarget::Latency && coding > budget) return kInfiniteBandwidth;
        } catch (const UnstableQueueError&) {
            return kInfiniteBandwidth;
        }
    }
    auto ok = [&](double z) { return qos_value(user, link, z, mode, target, sys, model) <= budget; };
    if (!ok(z_hi)) return kInfiniteBandwidth;
    // z = 0 never delivers a packet, so it always misses either budget.
    double lo = 0.0;
    double hi = z_hi;
    while (hi - lo > resolution) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? hi : lo) = mid;
    }
    return hi;
}

BandwidthThresholds compute_thresholds(const Scenario& s, int threads) {
    const std::size_t U = s.num_users(), J = s.num_stations();
    BandwidthThresholds th{Grid<ModeThresholds>(U, J), Grid<ModeThresholds>(U, J), Grid<double>(U, J),
                           Grid<double>(U, J)};
    const auto& opt = s.optimizer;
    parallel_for(U * J * 2, threads, [&](std::size_t k) {
        const std::size_t i = k / (2 * J), j = (k / 2) % J;
        const Mode mode = k % 2 == 0 ? Mode::SemCom : Mode::BitCom;
        const auto& user = s.users[i];
        const auto& link = s.links(i, j);
        const double z_hi = opt.bracket_factor * s.stations[j].bandwidth;
        ModeThresholds t;
        t.rate = min_bandwidth_rate(user, link, mode);
        t.latency = min_bandwidth_qos(user, link, mode, QosTarget::Latency, s.system, z_hi,
                                      opt.bisection_resolution_hz, opt.variance_model);
        t.loss = t.latency < kInfiniteBandwidth
                     ? min_bandwidth_qos(user, link, mode, QosTarget::Loss, s.system, z_hi,
                                         opt.bisection_resolution_hz, opt.variance_model)
                     : kInfiniteBandwidth;
        t.th = std::max({t.rate, t.latency, t.loss});
        const double rate = t.finite() ? mean_message_rate(user, link, t.th, mode) : 0.0;
        if (mode == Mode::SemCom) {
            th.semcom(i, j) = t;
            th.semcom_rate(i, j) = rate;
        } else {
            th.bitcom(i, j) = t;
            th.bitcom_rate(i, j) = rate;
        }
    });
    return th;
}

PreferenceLists full_preferences(std::size_t users, std::size_t stations) {
    return PreferenceLists(users, 2 * stations, 1);
}

Grid<double> compute_xi(const BandwidthThresholds& th, const std::vector<double>& eta) {
    const std::size_t U = th.num_users(), J = th.num_stations();
    Grid<double> xi(U, 2 * J);
    for (std::size_t i = 0; i < U; ++i) {
        for (std::size_t jp = 0; jp < 2 * J; ++jp) {
            const std::size_t j = jp % J;
            const Mode m = jp < J ? Mode::SemCom : Mode::BitCom;
            const auto& t = th.at(i, j, m);
            xi(i, jp) = t.finite() ? th.rate_at(i, j, m) - eta[j] * t.th : kNegInf;
        }
    }
    return xi;
}

namespace {

int best_entry(const Grid<double>& xi, const PreferenceLists& prefs, std::size_t i) {
    int best = -1;
    for (std::size_t jp = 0; jp < xi.cols(); ++jp) {
        if (!prefs(i, jp) || xi(i, jp) == kNegInf) continue;
        if (best < 0 || xi(i, jp) > xi(i, static_cast<std::size_t>(best))) best = static_cast<int>(jp);
    }
    return best;
}

}  // namespace

Choices assign_best(const Grid<double>& xi, const PreferenceLists& prefs) {
    Choices c(xi.rows());
    for (std::size_t i = 0; i < xi.rows(); ++i) c[i] = best_entry(xi, prefs, i);
    return c;
}

double demand(const BandwidthThresholds& th, std::size_t i, int jp) {
    if (jp < 0) return 0.0;
    const std::size_t J = th.num_stations();
    return th.at(i, station_of(jp, J), mode_of(jp, J)).th;
}

std::vector<double> station_load(const BandwidthThresholds& th, const Choices& c) {
    const std::size_t J = th.num_stations();
    std::vector<double> load(J, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] >= 0) load[station_of(c[i], J)] += demand(th, i, c[i]);
    }
    return load;
}

std::vector<double> update_multipliers(const std::vector<double>& eta, double step, const BandwidthThresholds& th,
                                       const Choices& c, const std::vector<double>& budgets) {
    const auto load = station_load(th, c);
    std::vector<double> next(eta.size());
    for (std::size_t j = 0; j < eta.size(); ++j) {
        next[j] = std::max(eta[j] - step * (budgets[j] - load[j]), 0.0);
    }
    return next;
}

Choices repair_feasibility(Choices c, const BandwidthThresholds& th, const Grid<double>& xi,
                           const std::vector<double>& budgets, PreferenceLists& prefs, RepairLog* log) {
    const std::size_t J = th.num_stations();
    const std::size_t bound = 2 * c.size() * J;
    std::size_t removals = 0;
    for (bool violated = true; violated;) {
        violated = false;
        for (std::size_t j = 0; j < J; ++j) {
            for (;;) {
                const auto load = station_load(th, c);
                if (load[j] <= budgets[j]) break;
                violated = true;
                std::size_t victim = c.size();
                for (std::size_t i = 0; i < c.size(); ++i) {
                    if (c[i] < 0 || station_of(c[i], J) != j) continue;
                    if (victim == c.size() || demand(th, i, c[i]) > demand(th, victim, c[victim])) victim = i;
                }
                prefs(victim, static_cast<std::size_t>(c[victim])) = 0;
                c[victim] = best_entry(xi, prefs, victim);
                if (++removals > bound) throw std::logic_error("repair exceeded its removal bound");
                if (c[victim] < 0 && log) {
                    log->diagnostics.push_back("user " + std::to_string(victim) + ": preference list exhausted");
                }
            }
        }
    }
    if (log) log->removals = static_cast<int>(removals);
    return c;
}

Choices Assignment::choices() const {
    const std::size_t J = x.cols();
    Choices c(x.rows(), -1);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < J; ++j) {
            if (x(i, j)) c[i] = extended_index(j, y(i, j) ? Mode::SemCom : Mode::BitCom, J);
        }
    }
    return c;
}

Assignment make_assignment(std::size_t users, std::size_t stations, const Choices& c) {
    Assignment a{Grid<std::uint8_t>(users, stations), Grid<std::uint8_t>(users, stations),
                 Grid<double>(users, stations), {}, 0.0};
    for (std::size_t i = 0; i < users; ++i) {
        if (c[i] < 0) {
            a.unserved.push_back(static_cast<int>(i));
            continue;
        }
        const std::size_t j = station_of(c[i], stations);
        a.x(i, j) = 1;
        a.y(i, j) = mode_of(c[i], stations) == Mode::SemCom ? 1 : 0;
    }
    return a;
}

namespace {

// Mean message rate segments of one link as a function of z: (length in Hz, msg/s per Hz).
std::vector<B2MFunction::Segment> rate_segments(const MobileUser& user, const LinkModel& link, Mode mode) {
    const double se = link.spectral_efficiency();
    if (mode == Mode::BitCom) return {{kInfiniteBandwidth, link.rho * se}};
    std::vector<B2MFunction::Segment> out;
    for (const auto& seg : link.b2m.segments()) out.push_back({seg.length / se, user.tau * seg.slope * se});
    out.push_back({kInfiniteBandwidth, 0.0});  // saturated tail
    return out;
}

}  // namespace

Grid<double> allocate_bandwidth(const Scenario& s, const Choices& c, const BandwidthThresholds& th) {
    const std::size_t U = s.num_users(), J = s.num_stations();
    Grid<double> z(U, J);
    for (std::size_t j = 0; j < J; ++j) {
        struct Cursor {
            std::size_t user;
            std::vector<B2MFunction::Segment> segs;
            std::size_t k = 0;
        };
        std::vector<Cursor> cursors;
        double used = 0.0;
        for (std::size_t i = 0; i < U; ++i) {
            if (c[i] < 0 || station_of(c[i], J) != j) continue;
            const Mode m = mode_of(c[i], J);
            const double floor_z = th.at(i, j, m).th;
            if (!(floor_z < kInfiniteBandwidth)) throw std::logic_error("allocation over an infinite threshold");
            z(i, j) = floor_z;
            used += floor_z;
            // Skip the part of the curve already covered by the threshold.
            Cursor cur{i, rate_segments(s.users[i], s.links(i, j), m)};
            double start = floor_z;
            while (start > 0.0 && cur.k < cur.segs.size() && cur.segs[cur.k].length <= start) {
                start -= cur.segs[cur.k].length;
                ++cur.k;
            }
            if (cur.k < cur.segs.size()) cur.segs[cur.k].length -= start;
            cursors.push_back(std::move(cur));
        }
        const double budget = s.stations[j].bandwidth;
        if (used > budget * (1.0 + 1e-12)) {
            throw std::logic_error("station " + std::to_string(j) + " thresholds exceed its budget");
        }
        if (cursors.empty()) continue;
        double surplus = budget - used;
        while (surplus > 0.0) {
            Cursor* best = nullptr;
            for (auto& cur : cursors) {
                if (cur.k >= cur.segs.size()) continue;
                if (!best || cur.segs[cur.k].slope > best->segs[best->k].slope) best = &cur;
            }
            auto& seg = best->segs[best->k];
            const double give = std::min(seg.length, surplus);
            z(best->user, j) += give;
            surplus -= give;
            seg.length -= give;
            if (seg.length <= 0.0) ++best->k;
        }
        // Re-close the budget exactly against accumulated rounding.
        double sum = 0.0;
        for (const auto& cur : cursors) sum += z(cur.user, j);
        z(cursors.front().user, j) += budget - sum;
    }
    return z;
}

ObjectiveReport evaluate_objective(const Scenario& s, const Assignment& a) {
    const std::size_t U = s.num_users(), J = s.num_stations();
    ObjectiveReport r;
    r.per_user.assign(U, 0.0);
    std::vector<double> load(J, 0.0);
    for (std::size_t i = 0; i < U; ++i) {
        int associations = 0;
        for (std::size_t j = 0; j < J; ++j) {
            if (!a.x(i, j)) {
                if (a.y(i, j)) r.violations.push_back({int(i), int(j), "mode", 1.0, 0.0});
                continue;
            }
            ++associations;
            load[j] += a.z(i, j);
            const auto& user = s.users[i];
            const auto& link = s.links(i, j);
            const Mode m = a.y(i, j) ? Mode::SemCom : Mode::BitCom;
            const double rate = mean_message_rate(user, link, a.z(i, j), m);
            r.per_user[i] += rate;
            if (rate < user.min_rate * (1.0 - 1e-9)) {
                r.violations.push_back({int(i), int(j), "min-rate", rate, user.min_rate});
            }
            double latency = kInfiniteBandwidth, loss = 1.0;
            try {
                const auto q = link_metrics(user, link, a.z(i, j), m, s.system, s.optimizer.variance_model);
                latency = q.total_latency;
                loss = q.loss_ratio;
            } catch (const UnstableQueueError&) {
            } catch (const DegenerateQueueError&) {
            }
            if (latency > s.system.latency_budget * (1.0 + 1e-9)) {
                r.violations.push_back({int(i), int(j), "latency", latency, s.system.latency_budget});
            }
            if (loss > s.system.loss_budget * (1.0 + 1e-9)) {
                r.violations.push_back({int(i), int(j), "loss", loss, s.system.loss_budget});
            }
        }
        if (associations > 1) r.violations.push_back({int(i), -1, "single-bs", double(associations), 1.0});
        r.total += r.per_user[i];
    }
    for (std::size_t j = 0; j < J; ++j) {
        const double budget = s.stations[j].bandwidth;
        if (load[j] > budget * (1.0 + 1e-9)) r.violations.push_back({-1, int(j), "bandwidth", load[j], budget});
    }
    return r;
}

double allocated_throughput(const Scenario& s, const Choices& c, const BandwidthThresholds& th) {
    const std::size_t J = s.num_stations();
    const auto z = allocate_bandwidth(s, c, th);
    double total = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] < 0) continue;
        const std::size_t j = station_of(c[i], J);
        total += mean_message_rate(s.users[i], s.links(i, j), z(i, j), mode_of(c[i], J));
    }
    return total;
}

int local_search(const Scenario& s, const BandwidthThresholds& th, Choices& c, int max_passes) {
    const std::size_t J = s.num_stations();
    std::vector<double> budgets(J);
    for (std::size_t j = 0; j < J; ++j) budgets[j] = s.stations[j].bandwidth;
    double current = allocated_throughput(s, c, th);
    int moves = 0;
    for (int pass = 0; pass < max_passes; ++pass) {
        bool improved = false;
        for (std::size_t i = 0; i < c.size(); ++i) {
            const int original = c[i];
            int best = original;
            double best_value = current;
            for (int jp = 0; jp < static_cast<int>(2 * J); ++jp) {
                if (jp == original || !(demand(th, i, jp) < kInfiniteBandwidth)) continue;
                c[i] = jp;
                const auto load = station_load(th, c);
                const std::size_t j = station_of(jp, J);
                if (load[j] <= budgets[j]) {
                    const double value = allocated_throughput(s, c, th);
                    if (value > best_value * (1.0 + 1e-12)) {
                        best_value = value;
                        best = jp;
                    }
                }
            }
            c[i] = best;
            if (best != original) {
                current = best_value;
                improved = true;
                ++moves;
            }
        }
        if (!improved) break;
    }
    return moves;
}

UaMsResult solve_ua_ms(const Scenario& s, const BandwidthThresholds& th) {
    const std::size_t U = s.num_users(), J = s.num_stations();
    const auto& opt = s.optimizer;
    std::vector<double> budgets(J);
    for (std::size_t j = 0; j < J; ++j) budgets[j] = s.stations[j].bandwidth;

    UaMsResult out;
    std::vector<double> eta(J, 0.0);
    double best_value = kNegInf;
    for (int l = 1; l <= opt.max_iterations; ++l) {
        const auto xi = compute_xi(th, eta);
        const auto prefs_all = full_preferences(U, J);
        const Choices raw = assign_best(xi, prefs_all);

        DualIterate it;
        it.iteration = l;
        it.eta = eta;
        for (std::size_t i = 0; i < U; ++i) {
            if (raw[i] >= 0) it.dual_value += xi(i, static_cast<std::size_t>(raw[i]));
        }
        for (std::size_t j = 0; j < J; ++j) it.dual_value += eta[j] * budgets[j];

        auto prefs = prefs_all;
        const Choices fixed = repair_feasibility(raw, th, xi, budgets, prefs);
        for (std::size_t i = 0; i < U; ++i) {
            if (fixed[i] < 0) {
                ++it.unserved;
                continue;
            }
            it.primal_objective += th.rate_at(i, station_of(fixed[i], J), mode_of(fixed[i], J));
        }
        it.full_objective = allocated_throughput(s, fixed, th);
        if (it.full_objective > best_value) {
            best_value = it.full_objective;
            out.choices = fixed;
            out.best_iteration = l;
        }

        const double step = opt.stepsize_scale / l;
        auto next = update_multipliers(eta, step, th, raw, budgets);
        double change = 0.0;
        for (std::size_t j = 0; j < J; ++j) change = std::max(change, std::abs(next[j] - eta[j]));
        out.trace.push_back(std::move(it));
        eta = std::move(next);
        if (change < opt.tolerance) {
            out.converged = true;
            break;
        }
    }
    out.dual_objective = best_value;
    if (opt.local_search_passes > 0) out.local_moves = local_search(s, th, out.choices, opt.local_search_passes);
    return out;
}

Solution solve(const Scenario& s, int threads) {
    Solution sol;
    sol.thresholds = compute_thresholds(s, threads);
    sol.dual = solve_ua_ms(s, sol.thresholds);
    sol.assignment = make_assignment(s.num_users(), s.num_stations(), sol.dual.choices);
    sol.assignment.z = allocate_bandwidth(s, sol.dual.choices, sol.thresholds);
    sol.report = evaluate_objective(s, sol.assignment);
    sol.assignment.objective = sol.report.total;
    return sol;
}

}  // namespace hsbnet
