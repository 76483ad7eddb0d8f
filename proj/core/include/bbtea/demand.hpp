#ifndef BBTEA_DEMAND_HPP
#define BBTEA_DEMAND_HPP

#include "bbtea/config.hpp"
#include "bbtea/country.hpp"

#include <span>
#include <string>
#include <vector>

namespace bbtea {

double smartphone_users(double population, double cellpen, double sppen, int networks);
double cell_users(double population, double cellpen, int networks);

/// dn > 3 is high, dn < 1 is low, anything between is mid.
ArpuTier arpu_tier_from_luminosity(double dn);

/// Annual revenue per km^2 from a monthly ARPU.
double revenue_density(double sp_users, double cell_users, double arpu_monthly, double area_km2);

double traffic_density(double sp_users, double target_mbps, double obf, double area_km2);

/// Present value of a yearly series; index 0 is undiscounted.
double npv(std::span<const double> cashflows, double rate);

struct DemandPoint {
    std::string area_id;
    int year = 0;
    double sp_users = 0.0;
    double cell_users = 0.0;
    double revenue_usd_km2 = 0.0;
    double traffic_mbps_km2 = 0.0;
    ArpuTier arpu_tier = ArpuTier::Low;
};

/// One point per study year. Throws RuntimeFailure if the region lacks a
/// penetration value for any year.
std::vector<DemandPoint> demand_series(const LocalArea& area, const RegionRecord& region,
                                       const ModelConfig& config, const Scenario& scenario);

}  // namespace bbtea

#endif  // BBTEA_DEMAND_HPP
