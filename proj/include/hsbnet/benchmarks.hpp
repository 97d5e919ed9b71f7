#pragma once

#include <string>
#include <vector>

#include "hsbnet/optimizer.hpp"

namespace hsbnet {

enum class MsScheme {
    MatchingDegree,  ///< MS-I: SemCom iff tau > tau_threshold
    Sinr,            ///< MS-II: BitCom iff mean SINR > sinr_threshold_db
};

enum class BaScheme {
    WaterFilling,  ///< BA-I over mean channel gains, no QoS floors
    Even,          ///< BA-II
};

std::string scheme_name(MsScheme ms, BaScheme ba);

/// Station with the largest mean SINR for each user, ties to the lowest index.
std::vector<std::size_t> max_sinr_association(const Scenario& s);

/// Water-filling fractions f_i = (nu - 1/g_i)^+ with sum f_i = 1 for gains g_i > 0.
std::vector<double> water_filling(const std::vector<double>& gains);

/// Max-SINR association with the given mode rule and split. Every user is served;
/// QoS shortfalls show up in `report.violations` rather than being repaired.
struct BenchmarkResult {
    Assignment assignment;
    ObjectiveReport report;
};
BenchmarkResult benchmark_assign(const Scenario& s, MsScheme ms, BaScheme ba);

}  // namespace hsbnet
