#include <gtest/gtest.h>

#include <numeric>

#include "fuzz.hpp"
#include "hsbnet/benchmarks.hpp"

using namespace hsbnet;

namespace {

Scenario two_station_scenario(std::size_t U) {
    Scenario s;
    s.users.resize(U);
    s.stations.resize(2);
    s.stations[1].id = 1;
    s.links = Grid<LinkModel>(U, 2);
    for (std::size_t i = 0; i < U; ++i) {
        s.users[i].id = static_cast<int>(i);
        s.links(i, 0).mu_id = s.links(i, 1).mu_id = static_cast<int>(i);
        s.links(i, 1).bs_id = 1;
        s.links(i, 0).mean_sinr_db = 0.0;
        s.links(i, 1).mean_sinr_db = -3.0;
    }
    return s;
}

}  // namespace

TEST(Benchmark, Names) {
    EXPECT_EQ(scheme_name(MsScheme::MatchingDegree, BaScheme::WaterFilling), "MS-I+BA-I");
    EXPECT_EQ(scheme_name(MsScheme::Sinr, BaScheme::Even), "MS-II+BA-II");
}

TEST(Benchmark, MaxSinrTiesToLowestIndex) {
    auto s = two_station_scenario(2);
    s.links(1, 1).mean_sinr_db = 4.0;
    s.links(0, 1).mean_sinr_db = 0.0;
    EXPECT_EQ(max_sinr_association(s), (std::vector<std::size_t>{0, 1}));
}

TEST(Benchmark, MatchingDegreeRule) {
    auto s = two_station_scenario(2);
    s.users[0].tau = 0.9;
    s.users[1].tau = 0.8;  // not strictly above the threshold
    const auto r = benchmark_assign(s, MsScheme::MatchingDegree, BaScheme::Even);
    EXPECT_EQ(r.assignment.y(0, 0), 1);
    EXPECT_EQ(r.assignment.y(1, 0), 0);
}

TEST(Benchmark, SinrRule) {
    auto s = two_station_scenario(2);
    s.links(0, 0).mean_sinr_db = 7.0;
    s.links(1, 0).mean_sinr_db = 6.0;
    const auto r = benchmark_assign(s, MsScheme::Sinr, BaScheme::Even);
    EXPECT_EQ(r.assignment.x(0, 0), 1);
    EXPECT_EQ(r.assignment.y(0, 0), 0);
    EXPECT_EQ(r.assignment.y(1, 0), 1);
}

TEST(Benchmark, EvenSplit) {
    const auto s = two_station_scenario(3);
    const auto r = benchmark_assign(s, MsScheme::MatchingDegree, BaScheme::Even);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_DOUBLE_EQ(r.assignment.z(i, 0), 5e6);
        EXPECT_EQ(r.assignment.z(i, 1), 0.0);
    }
    EXPECT_TRUE(r.assignment.unserved.empty());
}

TEST(Benchmark, WaterFillingExample) {
    // Inverse gains 0.5, 1, 4: level 1.25 keeps the first two and shuts off the third.
    const auto f = water_filling({2.0, 1.0, 0.25});
    EXPECT_NEAR(f[0], 0.75, 1e-12);
    EXPECT_NEAR(f[1], 0.25, 1e-12);
    EXPECT_EQ(f[2], 0.0);
    EXPECT_EQ(water_filling({3.0}), std::vector<double>{1.0});
}

TEST(Benchmark, WaterFillingKkt) {
    Rng rng = make_stream(31, {});
    for (int r = 0; r < 500; ++r) {
        std::vector<double> g(1 + rng() % 12);
        for (auto& x : g) x = std::pow(10.0, hsbnet::testing::uniform(rng, -2.0, 2.0));
        const auto f = water_filling(g);
        ASSERT_NEAR(std::accumulate(f.begin(), f.end(), 0.0), 1.0, 1e-12);
        double nu = -1.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            ASSERT_GE(f[i], 0.0);
            if (f[i] > 0.0) {
                if (nu < 0) nu = f[i] + 1.0 / g[i];
                ASSERT_NEAR(f[i] + 1.0 / g[i], nu, 1e-9 * nu);
            }
        }
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (f[i] == 0.0) ASSERT_GE(1.0 / g[i], nu - 1e-9 * nu);
        }
    }
}

TEST(Benchmark, BudgetsExhaustedOnGeneratedScenario) {
    GenerationConfig g;
    g.num_users = 20;
    g.num_stations = 3;
    const auto s = generate_scenario(g);
    for (auto ms : {MsScheme::MatchingDegree, MsScheme::Sinr}) {
        for (auto ba : {BaScheme::WaterFilling, BaScheme::Even}) {
            const auto r = benchmark_assign(s, ms, ba);
            for (std::size_t j = 0; j < 3; ++j) {
                double sum = 0.0;
                int members = 0;
                for (std::size_t i = 0; i < 20; ++i) {
                    sum += r.assignment.z(i, j);
                    members += r.assignment.x(i, j);
                }
                if (members) EXPECT_NEAR(sum, s.stations[j].bandwidth, 1e-6 * s.stations[j].bandwidth);
            }
            for (const auto& v : r.report.violations) {
                EXPECT_NE(v.constraint, "bandwidth");
                EXPECT_NE(v.constraint, "single-bs");
            }
            EXPECT_NEAR(r.assignment.objective, r.report.total, 1e-9);
        }
    }
}
