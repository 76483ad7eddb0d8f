#include "bbtea/cost.hpp"

#include "bbtea/demand.hpp"
#include "csv.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <set>

namespace bbtea {

double UnitCosts::site_rental(Geotype g) const {
    switch (g) {
        case Geotype::Urban: return site_rental_urban;
        case Geotype::Suburban: return site_rental_suburban;
        case Geotype::Rural: return site_rental_rural;
    }
    return site_rental_rural;
}

double UnitCosts::fiber_per_m(Geotype g) const {
    switch (g) {
        case Geotype::Urban: return fiber_urban_per_m;
        case Geotype::Suburban: return fiber_suburban_per_m;
        case Geotype::Rural: return fiber_rural_per_m;
    }
    return fiber_rural_per_m;
}

void UnitCosts::validate() const {
    for (const auto& [name, field] : unit_cost_fields()) {
        if (!(this->*field >= 0.0)) {
            throw ValidationError(fmt::format("invariant violated: unit cost {} >= 0", name));
        }
    }
}

const std::vector<std::pair<std::string_view, double UnitCosts::*>>& unit_cost_fields() {
    static const std::vector<std::pair<std::string_view, double UnitCosts::*>> fields{
        {"sector_antenna", &UnitCosts::sector_antenna},
        {"remote_radio_unit", &UnitCosts::remote_radio_unit},
        {"io_fronthaul", &UnitCosts::io_fronthaul},
        {"processing", &UnitCosts::processing},
        {"io_s1_x2", &UnitCosts::io_s1_x2},
        {"control_unit", &UnitCosts::control_unit},
        {"cooling_fans", &UnitCosts::cooling_fans},
        {"power_supply", &UnitCosts::power_supply},
        {"battery_system", &UnitCosts::battery_system},
        {"bbu_cabinet", &UnitCosts::bbu_cabinet},
        {"tower", &UnitCosts::tower},
        {"civil_materials", &UnitCosts::civil_materials},
        {"transportation", &UnitCosts::transportation},
        {"installation", &UnitCosts::installation},
        {"site_rental_urban", &UnitCosts::site_rental_urban},
        {"site_rental_suburban", &UnitCosts::site_rental_suburban},
        {"site_rental_rural", &UnitCosts::site_rental_rural},
        {"router", &UnitCosts::router},
        {"wireless_link_small", &UnitCosts::wireless_link_small},
        {"wireless_link_medium", &UnitCosts::wireless_link_medium},
        {"wireless_link_large", &UnitCosts::wireless_link_large},
        {"fiber_urban_per_m", &UnitCosts::fiber_urban_per_m},
        {"fiber_suburban_per_m", &UnitCosts::fiber_suburban_per_m},
        {"fiber_rural_per_m", &UnitCosts::fiber_rural_per_m},
        {"regional_fiber_link_per_m", &UnitCosts::regional_fiber_link_per_m},
        {"regional_fiber_node", &UnitCosts::regional_fiber_node},
        {"core_fiber_link_per_m", &UnitCosts::core_fiber_link_per_m},
        {"core_fiber_node", &UnitCosts::core_fiber_node},
    };
    return fields;
}

UnitCosts read_unit_costs_csv(std::istream& in, UnitCosts base) {
    const detail::CsvTable table(in, "unit costs");
    const auto c_name = table.require("component");
    const auto c_value = table.require("value");
    std::set<std::string, std::less<>> seen;
    for (std::size_t r = 0; r < table.rows(); ++r) {
        const std::string& name = table.cell(r, c_name);
        const auto& fields = unit_cost_fields();
        const auto it = std::find_if(fields.begin(), fields.end(),
                                     [&](const auto& f) { return f.first == name; });
        if (it == fields.end()) {
            throw ValidationError(
                fmt::format("{}: unknown unit cost component '{}'", table.where(r, c_name), name));
        }
        if (!seen.insert(name).second) {
            throw ValidationError(
                fmt::format("{}: duplicate unit cost component '{}'", table.where(r, c_name), name));
        }
        base.*(it->second) = table.number(r, c_value);
    }
    base.validate();
    return base;
}

double site_equipment_cost(const UnitCosts& uc) {
    return 3 * uc.sector_antenna + 3 * uc.remote_radio_unit + uc.io_fronthaul + uc.processing +
           uc.io_s1_x2 + uc.control_unit + uc.cooling_fans + uc.power_supply + uc.battery_system +
           uc.bbu_cabinet + uc.router;
}

SiteCost site_cost(SiteKind kind, Geotype geotype, const UnitCosts& uc) {
    double capex = site_equipment_cost(uc) + uc.installation;
    if (kind == SiteKind::Greenfield) capex += uc.tower + uc.civil_materials + uc.transportation;
    return {capex, uc.site_rental(geotype) + 0.1 * capex};
}

double backhaul_cost(BackhaulFamily family, double distance_km, Geotype geotype,
                     const UnitCosts& uc) {
    if (!(distance_km >= 0.0)) throw ValidationError("invariant violated: distance >= 0");
    if (family == BackhaulFamily::Fiber) return distance_km * 1000.0 * uc.fiber_per_m(geotype);
    if (distance_km < 15.0) return uc.wireless_link_small;
    if (distance_km <= 30.0) return uc.wireless_link_medium;
    return uc.wireless_link_large;
}

double fiber_network_cost(const RegionFiber& region, const UnitCosts& uc) {
    return region.core_km * 1000.0 * uc.core_fiber_link_per_m +
           region.new_core_nodes * uc.core_fiber_node +
           region.regional_km * 1000.0 * uc.regional_fiber_link_per_m +
           region.regional_nodes * uc.regional_fiber_node;
}

double spectrum_cost(std::span<const SpectrumBand> bands, double price_coverage,
                     double price_capacity, double population, double price_scalar) {
    if (population < 0.0) throw ValidationError("invariant violated: population >= 0");
    double total = 0.0;
    for (const auto& b : bands) {
        const double price = b.is_coverage() ? price_coverage : price_capacity;
        total += price * price_scalar * b.bandwidth_mhz * population;
    }
    return total;
}

StackParams stack_params_from(const ModelConfig& config) {
    return {config.admin_pct, config.tax_rate_pct, config.tax_base, config.profit_margin_pct};
}

CostBreakdown cost_stack(double ran, double backhaul, double core, double spectrum,
                         const StackParams& p) {
    if (p.admin_pct < 0.0 || p.tax_rate_pct < 0.0 || p.profit_margin_pct < 0.0) {
        throw ValidationError("invariant violated: cost percentages >= 0");
    }
    CostBreakdown c;
    c.ran = ran;
    c.backhaul = backhaul;
    c.core = core;
    c.spectrum = spectrum;
    const double network = c.network();
    const double margin = p.profit_margin_pct / 100.0;
    const double rate = p.tax_rate_pct / 100.0;
    c.admin = network * p.admin_pct;
    if (p.tax_base == TaxBase::Network) {
        c.tax = network * rate;
    } else {
        // Tax on profit, where profit itself includes tax: solve the fixed point.
        if (rate * margin >= 1.0) throw ValidationError("tax rate times margin must be below 1");
        c.tax = rate * margin * (network + spectrum) / (1.0 - rate * margin);
    }
    c.profit = (network + spectrum + c.tax) * margin;
    c.total = network + c.admin + c.spectrum + c.tax + c.profit;
    return c;
}

CostBreakdown cost_stack(double network, double admin_pct, double spectrum, double tax_rate_pct,
                         double profit_margin_pct) {
    return cost_stack(network, 0.0, 0.0, spectrum,
                      StackParams{admin_pct, tax_rate_pct, TaxBase::Network, profit_margin_pct});
}

double discount_capex_opex(std::span<const double> capex, std::span<const double> opex,
                           double discount_rate, double wacc) {
    if (!(wacc >= 0.0 && wacc < 1.0)) throw ValidationError("invariant violated: wacc in [0, 1)");
    std::vector<double> flows(std::max(capex.size(), opex.size()), 0.0);
    for (std::size_t t = 0; t < capex.size(); ++t) flows[t] += capex[t] * (1.0 + wacc);
    for (std::size_t t = 0; t < opex.size(); ++t) flows[t] += opex[t];
    return npv(flows, discount_rate);
}

double site_lifetime_cost(SiteKind kind, Geotype geotype, const UnitCosts& uc, int years,
                          double discount_rate, double wacc) {
    const SiteCost c = site_cost(kind, geotype, uc);
    std::vector<double> capex(static_cast<std::size_t>(years), 0.0);
    std::vector<double> opex(static_cast<std::size_t>(years), c.opex_annual);
    if (!capex.empty()) capex[0] = c.capex;
    return discount_capex_opex(capex, opex, discount_rate, wacc);
}

}  // namespace bbtea
