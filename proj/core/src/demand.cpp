#include "bbtea/demand.hpp"

#include <fmt/format.h>

#include <cmath>

namespace bbtea {

double smartphone_users(double population, double cellpen, double sppen, int networks) {
    if (cellpen < 0.0 || cellpen > 1.0 || sppen < 0.0 || sppen > 1.0) {
        throw ValidationError("invariant violated: penetration fractions in [0, 1]");
    }
    if (networks < 1) throw ValidationError("invariant violated: networks >= 1");
    return population * cellpen * sppen / networks;
}

double cell_users(double population, double cellpen, int networks) {
    return smartphone_users(population, cellpen, 1.0, networks);
}

ArpuTier arpu_tier_from_luminosity(double dn) {
    if (!(dn >= 0.0 && dn <= 64.0)) {
        throw ValidationError(fmt::format("luminosity {} DN outside [0, 64]", dn));
    }
    if (dn > 3.0) return ArpuTier::High;
    if (dn < 1.0) return ArpuTier::Low;
    return ArpuTier::Mid;
}

double revenue_density(double sp_users, double cell_users, double arpu_monthly, double area_km2) {
    if (!(area_km2 > 0.0)) throw ValidationError("invariant violated: area_km2 > 0");
    if (cell_users < sp_users) throw ValidationError("invariant violated: cell_users >= sp_users");
    return 12.0 * (sp_users * arpu_monthly + (cell_users - sp_users) * arpu_monthly) / area_km2;
}

double traffic_density(double sp_users, double target_mbps, double obf, double area_km2) {
    if (!(obf >= 1.0)) throw ValidationError("invariant violated: overbooking factor >= 1");
    if (!(area_km2 > 0.0)) throw ValidationError("invariant violated: area_km2 > 0");
    return sp_users * target_mbps / obf / area_km2;
}

double npv(std::span<const double> cashflows, double rate) {
    if (!(rate >= 0.0 && rate < 1.0)) throw ValidationError("invariant violated: rate in [0, 1)");
    double total = 0.0;
    double factor = 1.0;
    for (double c : cashflows) {
        total += c / factor;
        factor *= 1.0 + rate;
    }
    return total;
}

std::vector<DemandPoint> demand_series(const LocalArea& area, const RegionRecord& region,
                                       const ModelConfig& config, const Scenario& scenario) {
    const ArpuTier tier = arpu_tier_from_luminosity(area.luminosity_dn);
    const double arpu = region.arpu(tier);
    const double target = scenario.target(area.geotype);
    std::vector<DemandPoint> out;
    out.reserve(static_cast<std::size_t>(config.study_years()));
    for (int year = config.study_start_year; year <= config.study_end_year; ++year) {
        DemandPoint p;
        p.area_id = area.area_id;
        p.year = year;
        p.arpu_tier = tier;
        const double cp = region.cellpen(year);
        p.sp_users = smartphone_users(area.population, cp, region.sppen(year), config.networks);
        p.cell_users = cell_users(area.population, cp, config.networks);
        p.revenue_usd_km2 = revenue_density(p.sp_users, p.cell_users, arpu, area.area_km2);
        p.traffic_mbps_km2 =
            traffic_density(p.sp_users, target, config.overbooking_factor, area.area_km2);
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace bbtea
