#pragma once

// Exhaustive reference optimum for tiny scenarios with linear B2M functions.

#include <cmath>
#include <optional>
#include <vector>

#include "hsbnet/optimizer.hpp"

namespace hsbnet::testing {

/// Best throughput over every choice vector (each user: unserved, or any finite-threshold
/// entry) whose threshold loads fit the budgets. With linear B2M maps every rate is linear
/// in z, so a station's best split gives each member its threshold and the surplus to the
/// steepest member. Returns nothing when no user can be served at all.
inline std::optional<double> exhaustive_optimum(const Scenario& s, const BandwidthThresholds& th) {
    const std::size_t U = s.num_users(), J = s.num_stations();
    const int options = static_cast<int>(2 * J + 1);
    std::size_t combos = 1;
    for (std::size_t i = 0; i < U; ++i) combos *= static_cast<std::size_t>(options);

    std::optional<double> best;
    std::vector<int> c(U);
    for (std::size_t code = 0; code < combos; ++code) {
        std::size_t x = code;
        bool ok = true, any = false;
        for (std::size_t i = 0; i < U; ++i) {
            c[i] = static_cast<int>(x % static_cast<std::size_t>(options)) - 1;
            x /= static_cast<std::size_t>(options);
            if (c[i] < 0) continue;
            any = true;
            if (!std::isfinite(th.at(i, station_of(c[i], J), mode_of(c[i], J)).th)) ok = false;
        }
        if (!ok || !any) continue;

        double total = 0.0;
        for (std::size_t j = 0; j < J && ok; ++j) {
            double load = 0.0, steepest = 0.0;
            for (std::size_t i = 0; i < U; ++i) {
                if (c[i] < 0 || station_of(c[i], J) != j) continue;
                const Mode m = mode_of(c[i], J);
                const double z = th.at(i, j, m).th;
                load += z;
                total += mean_message_rate(s.users[i], s.links(i, j), z, m);
                const double slope = mean_message_rate(s.users[i], s.links(i, j), 1.0, m) -
                                     mean_message_rate(s.users[i], s.links(i, j), 0.0, m);
                steepest = std::max(steepest, slope);
            }
            if (load > s.stations[j].bandwidth) ok = false;
            total += (s.stations[j].bandwidth - load) * steepest;
        }
        if (ok && (!best || total > *best)) best = total;
    }
    return best;
}

/// 4 users, 2 stations, linear B2M maps.
inline GenerationConfig tiny_generation(std::uint64_t seed) {
    GenerationConfig g;
    g.num_users = 4;
    g.num_stations = 2;
    g.seed = seed;
    return g;
}

}  // namespace hsbnet::testing
