#include "bbtea/demand.hpp"
#include "bbtea/synthetic.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

using namespace bbtea;

TEST(Demand, SmartphoneUsers) {
    EXPECT_DOUBLE_EQ(smartphone_users(10000, 0.8, 0.5, 4), 1000.0);
    EXPECT_DOUBLE_EQ(smartphone_users(0, 0.8, 0.5, 4), 0.0);
    EXPECT_DOUBLE_EQ(smartphone_users(10000, 0.8, 1.0, 1), 8000.0);
    EXPECT_THROW(smartphone_users(100, 1.2, 0.5, 1), ValidationError);
    EXPECT_THROW(smartphone_users(100, 0.5, 0.5, 0), ValidationError);
}

TEST(Demand, ArpuTiers) {
    EXPECT_EQ(arpu_tier_from_luminosity(10), ArpuTier::High);
    EXPECT_EQ(arpu_tier_from_luminosity(0), ArpuTier::Low);
    EXPECT_EQ(arpu_tier_from_luminosity(2), ArpuTier::Mid);
    EXPECT_EQ(arpu_tier_from_luminosity(3), ArpuTier::Mid);
    EXPECT_EQ(arpu_tier_from_luminosity(1), ArpuTier::Mid);
    EXPECT_THROW(arpu_tier_from_luminosity(65), ValidationError);
}

TEST(Demand, RevenueDensity) {
    EXPECT_DOUBLE_EQ(revenue_density(100, 150, 1.2, 2), 1080.0);
    EXPECT_DOUBLE_EQ(revenue_density(0, 0, 1.2, 2), 0.0);
    EXPECT_DOUBLE_EQ(revenue_density(100, 100, 1.0, 1), 1200.0);
}

TEST(Demand, TrafficDensity) {
    EXPECT_DOUBLE_EQ(traffic_density(100, 10, 20, 2), 25.0);
    EXPECT_DOUBLE_EQ(traffic_density(0, 10, 20, 2), 0.0);
    EXPECT_DOUBLE_EQ(ModelConfig{}.overbooking_factor, 20.0);
    // Linear in users and target; halving obf doubles traffic.
    EXPECT_DOUBLE_EQ(traffic_density(300, 10, 20, 2), 3 * traffic_density(100, 10, 20, 2));
    EXPECT_DOUBLE_EQ(traffic_density(100, 30, 20, 2), 3 * traffic_density(100, 10, 20, 2));
    EXPECT_DOUBLE_EQ(traffic_density(100, 10, 10, 2), 2 * traffic_density(100, 10, 20, 2));
}

TEST(Demand, NpvExamples) {
    const std::vector<double> flows{100, 100, 100};
    EXPECT_NEAR(npv(flows, 0.05), 285.94104308390, 1e-9);
    const std::vector<double> one{100};
    EXPECT_DOUBLE_EQ(npv(one, 0.3), 100.0);
    const std::vector<double> zeros(11, 0.0);
    EXPECT_DOUBLE_EQ(npv(zeros, 0.05), 0.0);
    EXPECT_THROW(npv(flows, 1.0), ValidationError);
}

TEST(Demand, NpvMatchesAnnuityClosedForm) {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> rate(0.0, 0.3), amount(1.0, 1e6);
    std::uniform_int_distribution<int> years(1, 40);
    for (int i = 0; i < 200; ++i) {
        const double c = amount(gen);
        const double r = rate(gen);
        const int n = years(gen);
        const std::vector<double> flows(static_cast<std::size_t>(n), c);
        const double expected = oracle::annuity_npv(c, r, n);
        EXPECT_NEAR(npv(flows, r), expected, 1e-9 * expected);
    }
}

namespace {

Scenario scenario() { return scenario_by_name("S2"); }

}  // namespace

TEST(Demand, SeriesCardinalityAndConstancy) {
    const ModelConfig cfg;
    const auto a = fixture::area("A1", "R1", 1000);
    const auto r = fixture::region("R1", 0.6, 0.5);
    const auto s = demand_series(a, r, cfg, scenario());
    ASSERT_EQ(s.size(), 11u);
    for (const auto& p : s) {
        EXPECT_DOUBLE_EQ(p.sp_users, s.front().sp_users);
        EXPECT_LE(p.sp_users, p.cell_users);
    }
    EXPECT_EQ(s.front().year, 2020);
    EXPECT_EQ(s.back().year, 2030);
}

TEST(Demand, RisingAdoptionGivesNonDecreasingTraffic) {
    const ModelConfig cfg;
    const auto a = fixture::area("A1", "R1", 1000);
    auto r = fixture::region("R1");
    for (int y = 2020; y <= 2030; ++y) r.sppen_by_year[y] = 0.1 + 0.05 * (y - 2020);
    const auto s = demand_series(a, r, cfg, scenario());
    for (std::size_t i = 1; i < s.size(); ++i) {
        EXPECT_GE(s[i].traffic_mbps_km2, s[i - 1].traffic_mbps_km2);
    }
}

TEST(Demand, MissingYearIsRuntimeFailure) {
    const auto a = fixture::area("A1", "R1", 1000);
    auto r = fixture::region("R1");
    r.cellpen_by_year.erase(2024);
    EXPECT_THROW(demand_series(a, r, ModelConfig{}, scenario()), RuntimeFailure);
}

TEST(Demand, AggregatesMatchNationalAdoption) {
    SyntheticParams p;
    p.n_areas = 1000;
    const ModelConfig cfg;
    const auto c = generate_synthetic_country(p, cfg);
    const int year = 2027;
    for (const auto& region : c.regions) {
        double users = 0.0;
        double pop = 0.0;
        for (const auto& a : c.areas) {
            if (a.region_id != region.region_id) continue;
            const auto s = demand_series(a, region, cfg, scenario());
            users += s[static_cast<std::size_t>(year - cfg.study_start_year)].sp_users * cfg.networks;
            pop += a.population;
        }
        const double expected = pop * region.cellpen(year) * region.sppen(year);
        EXPECT_NEAR(users, expected, 1e-6 * expected);
    }
}
