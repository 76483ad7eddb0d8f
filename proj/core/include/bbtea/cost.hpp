#ifndef BBTEA_COST_HPP
#define BBTEA_COST_HPP

#include "bbtea/config.hpp"
#include "bbtea/fiber.hpp"

#include <iosfwd>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace bbtea {

/// Component prices, USD. Fiber and link prices marked _per_m are per metre.
struct UnitCosts {
    double sector_antenna = 1500;
    double remote_radio_unit = 3500;
    double io_fronthaul = 1500;
    double processing = 1500;
    double io_s1_x2 = 1500;
    double control_unit = 2000;
    double cooling_fans = 250;
    double power_supply = 250;
    double battery_system = 10000;
    double bbu_cabinet = 200;
    double tower = 5000;
    double civil_materials = 5000;
    double transportation = 5000;
    double installation = 5000;
    double site_rental_urban = 15000;
    double site_rental_suburban = 5000;
    double site_rental_rural = 1000;
    double router = 2000;
    double wireless_link_small = 20000;
    double wireless_link_medium = 30000;
    double wireless_link_large = 60000;
    double fiber_urban_per_m = 20;
    double fiber_suburban_per_m = 10;
    double fiber_rural_per_m = 5;
    double regional_fiber_link_per_m = 2;
    double regional_fiber_node = 100000;
    double core_fiber_link_per_m = 4;
    double core_fiber_node = 50000;

    double site_rental(Geotype g) const;
    double fiber_per_m(Geotype g) const;
    void validate() const;

    friend bool operator==(const UnitCosts&, const UnitCosts&) = default;
};

/// Component name and field, in table order. Names are the keys accepted by
/// the override CSV.
const std::vector<std::pair<std::string_view, double UnitCosts::*>>& unit_cost_fields();

/// Applies `component,value` rows over `base`; unlisted components keep their
/// value. Unknown components are a ValidationError.
UnitCosts read_unit_costs_csv(std::istream& in, UnitCosts base = {});

enum class SiteKind { Greenfield, Upgrade };

struct SiteCost {
    double capex = 0.0;
    double opex_annual = 0.0;
};

/// Equipment bundle for a three-sector macro site, router included.
double site_equipment_cost(const UnitCosts& uc);

SiteCost site_cost(SiteKind kind, Geotype geotype, const UnitCosts& uc);

/// One link per site. Wireless links are sized by distance class; fiber is
/// priced per metre for the geotype.
double backhaul_cost(BackhaulFamily family, double distance_km, Geotype geotype,
                     const UnitCosts& uc);

/// New core and regional fiber for one region: links plus nodes.
double fiber_network_cost(const RegionFiber& region, const UnitCosts& uc);

/// Sum over bands of price * bandwidth * population. Sub-1 GHz bands use the
/// coverage price, the rest the capacity price.
double spectrum_cost(std::span<const SpectrumBand> bands, double price_coverage,
                     double price_capacity, double population, double price_scalar = 1.0);

struct CostBreakdown {
    double ran = 0.0;
    double backhaul = 0.0;
    double core = 0.0;
    double admin = 0.0;
    double spectrum = 0.0;
    double tax = 0.0;
    double profit = 0.0;
    double total = 0.0;

    double network() const { return ran + backhaul + core; }
};

struct StackParams {
    double admin_pct = 0.20;  // fraction of network cost
    double tax_rate_pct = 22.0;
    TaxBase tax_base = TaxBase::Network;
    double profit_margin_pct = 20.0;
};

StackParams stack_params_from(const ModelConfig& config);

/// Adds admin, tax and profit to network and spectrum costs.
CostBreakdown cost_stack(double ran, double backhaul, double core, double spectrum,
                         const StackParams& params);

/// Single-figure network cost, booked as RAN.
CostBreakdown cost_stack(double network, double admin_pct, double spectrum, double tax_rate_pct,
                         double profit_margin_pct);

/// Capex grossed up by (1 + wacc), then capex + opex discounted yearly.
double discount_capex_opex(std::span<const double> capex, std::span<const double> opex,
                           double discount_rate, double wacc);

/// Present cost of one site built in year 0 and run for `years` years.
double site_lifetime_cost(SiteKind kind, Geotype geotype, const UnitCosts& uc, int years,
                          double discount_rate, double wacc);

}  // namespace bbtea

#endif  // BBTEA_COST_HPP
