#include "hsbnet/benchmarks.hpp"

#include <algorithm>
#include <numeric>

namespace hsbnet {

std::string scheme_name(MsScheme ms, BaScheme ba) {
    return std::string(ms == MsScheme::MatchingDegree ? "MS-I" : "MS-II") + "+" +
           (ba == BaScheme::WaterFilling ? "BA-I" : "BA-II");
}

std::vector<std::size_t> max_sinr_association(const Scenario& s) {
    std::vector<std::size_t> out(s.num_users(), 0);
    for (std::size_t i = 0; i < s.num_users(); ++i) {
        for (std::size_t j = 1; j < s.num_stations(); ++j) {
            if (s.links(i, j).mean_sinr_db > s.links(i, out[i]).mean_sinr_db) out[i] = j;
        }
    }
    return out;
}

std::vector<double> water_filling(const std::vector<double>& gains) {
    // Sort inverse gains and find the largest active set whose water level clears them all.
    std::vector<std::size_t> order(gains.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return gains[a] > gains[b]; });
    std::vector<double> f(gains.size(), 0.0);
    double nu = 0.0, inv_sum = 0.0;
    std::size_t active = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const double g = gains[order[k]];
        if (!(g > 0.0)) break;
        const double level = (1.0 + inv_sum + 1.0 / g) / static_cast<double>(k + 1);
        if (level <= 1.0 / g) break;
        inv_sum += 1.0 / g;
        nu = level;
        active = k + 1;
    }
    for (std::size_t k = 0; k < active; ++k) f[order[k]] = std::max(nu - 1.0 / gains[order[k]], 0.0);
    return f;
}

BenchmarkResult benchmark_assign(const Scenario& s, MsScheme ms, BaScheme ba) {
    const std::size_t U = s.num_users(), J = s.num_stations();
    const auto bs = max_sinr_association(s);
    Choices c(U);
    for (std::size_t i = 0; i < U; ++i) {
        const auto& link = s.links(i, bs[i]);
        const bool semcom = ms == MsScheme::MatchingDegree ? s.users[i].tau > s.optimizer.tau_threshold
                                                           : !(link.mean_sinr_db > s.optimizer.sinr_threshold_db);
        c[i] = extended_index(bs[i], semcom ? Mode::SemCom : Mode::BitCom, J);
    }
    BenchmarkResult r;
    r.assignment = make_assignment(U, J, c);
    for (std::size_t j = 0; j < J; ++j) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < U; ++i) {
            if (bs[i] == j) members.push_back(i);
        }
        if (members.empty()) continue;
        const double Z = s.stations[j].bandwidth;
        if (ba == BaScheme::Even) {
            for (auto i : members) r.assignment.z(i, j) = Z / static_cast<double>(members.size());
        } else {
            std::vector<double> gains;
            for (auto i : members) gains.push_back(s.links(i, j).mean_sinr_linear());
            const auto f = water_filling(gains);
            for (std::size_t k = 0; k < members.size(); ++k) r.assignment.z(members[k], j) = Z * f[k];
        }
    }
    r.report = evaluate_objective(s, r.assignment);
    r.assignment.objective = r.report.total;
    return r;
}

}  // namespace hsbnet
