#include "bbtea/assessment.hpp"

#include "bbtea/demand.hpp"
#include "bbtea/parallel.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bbtea {

std::vector<int> assign_deciles(const std::vector<LocalArea>& areas) {
    if (areas.empty()) throw ValidationError("decile assignment needs at least one area");
    std::vector<std::size_t> order(areas.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (areas[a].pop_density != areas[b].pop_density) {
            return areas[a].pop_density > areas[b].pop_density;
        }
        return areas[a].area_id < areas[b].area_id;
    });
    double total = 0.0;
    for (const auto& a : areas) total += a.population;
    if (!(total > 0.0)) throw ValidationError("invariant violated: total population > 0");

    std::vector<int> labels(areas.size(), 0);
    const double bin = total / kDeciles;
    double cumulative = 0.0;
    int previous = 0;
    for (auto i : order) {
        const double mid = cumulative + areas[i].population / 2.0;
        cumulative += areas[i].population;
        const int by_mass = std::min(kDeciles, static_cast<int>(std::floor(mid / bin)) + 1);
        const int label = std::max(previous, std::min(by_mass, previous + 1));
        labels[i] = std::max(label, 1);
        previous = labels[i];
    }
    return labels;
}

AreaSites dimension_area(const std::string& area_id, double peak_traffic_mbps_km2,
                         double area_km2, const SitePortfolio& existing, Generation generation,
                         const CapacityCurve& curve) {
    const auto need = required_site_density(peak_traffic_mbps_km2, curve);
    if (!need.serveable) {
        throw RuntimeFailure(fmt::format(
            "area {}: demand of {} Mbps/km2 is unserveable at max density for {} {} "
            "(max capacity {} Mbps/km2)",
            area_id, peak_traffic_mbps_km2, to_string(curve.generation), to_string(curve.geotype),
            curve.rows.empty() ? 0.0 : curve.rows.back().capacity_mbps_km2));
    }
    AreaSites s;
    s.required = need.sites_per_km2 * area_km2;
    double remaining = s.required;
    const auto& g = existing.by_generation;
    if (generation == Generation::G4) {
        s.reused = std::min(remaining, static_cast<double>(g[0]));
        remaining -= s.reused;
        s.upgraded = std::min(remaining, static_cast<double>(g[1] + g[2]));
    } else {
        s.upgraded = std::min(remaining, static_cast<double>(existing.existing_sites));
    }
    remaining -= s.upgraded;
    s.greenfield = std::max(0.0, remaining);
    return s;
}

CrossSubsidy cross_subsidize(std::span<const double> costs, std::span<const double> revenues,
                             double threshold_pct) {
    if (threshold_pct < 0.0) throw ValidationError("invariant violated: threshold >= 0");
    if (costs.size() != revenues.size()) {
        throw ValidationError("cross-subsidy needs one revenue per cost");
    }
    const std::size_t n = costs.size();
    CrossSubsidy out;
    out.adjusted_revenue.assign(revenues.begin(), revenues.end());
    out.donated.assign(n, 0.0);
    out.received.assign(n, 0.0);
    out.subsidy.assign(n, 0.0);

    std::vector<double> excess(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (revenues[i] >= costs[i]) {
            excess[i] = std::max(0.0, revenues[i] - costs[i] * (1.0 + threshold_pct / 100.0));
            out.pool += excess[i];
        }
    }
    double left = out.pool;
    for (std::size_t i = 0; i < n && left > 0.0; ++i) {
        if (revenues[i] < costs[i]) {
            out.received[i] = std::min(left, costs[i] - revenues[i]);
            left -= out.received[i];
            out.applied += out.received[i];
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (out.pool > 0.0) out.donated[i] = excess[i] * out.applied / out.pool;
        out.adjusted_revenue[i] = revenues[i] - out.donated[i] + out.received[i];
        out.subsidy[i] = std::max(0.0, costs[i] - out.adjusted_revenue[i]);
    }
    return out;
}

std::vector<DecileResult> finalize_deciles(std::span<const DecileInputs> inputs,
                                           const std::string& scenario,
                                           const std::string& strategy, double spectrum_scalar,
                                           const ModelConfig& config) {
    const StackParams stack = stack_params_from(config);
    std::vector<DecileResult> out;
    std::vector<double> costs;
    std::vector<double> revenues;
    for (std::size_t d = 0; d < inputs.size(); ++d) {
        const auto& in = inputs[d];
        DecileResult r;
        r.scenario = scenario;
        r.strategy = strategy;
        r.decile = static_cast<int>(d) + 1;
        r.population = in.population;
        r.area_km2 = in.area_km2;
        r.new_sites = in.new_sites;
        r.upgraded_sites = in.upgraded_sites;
        r.cost = cost_stack(in.ran, in.backhaul, in.core, in.spectrum * spectrum_scalar, stack);
        r.revenue_npv = in.revenue;
        r.cost_per_user = in.final_sp_users > 0.0 ? r.cost.total / in.final_sp_users : 0.0;
        costs.push_back(r.cost.total);
        revenues.push_back(in.revenue);
        out.push_back(std::move(r));
    }
    const auto cs = cross_subsidize(costs, revenues, config.excess_profit_threshold_pct);
    double cum_cost = 0.0;
    double cum_revenue = 0.0;
    for (std::size_t d = 0; d < out.size(); ++d) {
        auto& r = out[d];
        r.revenue_adjusted = cs.adjusted_revenue[d];
        r.subsidy_required = cs.subsidy[d];
        cum_cost += r.cost.total;
        cum_revenue += r.revenue_adjusted;
        r.cumulative_cost = cum_cost;
        r.cumulative_revenue = cum_revenue;
        r.viable = cum_revenue >= cum_cost;
    }
    return out;
}

double viability_frontier(std::span<const DecileResult> deciles) {
    int reach = 0;
    for (const auto& d : deciles) {
        if (d.cumulative_revenue < d.cumulative_cost) break;
        reach = d.decile;
    }
    return 10.0 * reach;
}

Assessment::Assessment(Country country, ModelConfig config, UnitCosts costs,
                       CapacityLookup lookup)
    : country_(std::move(country)),
      config_(std::move(config)),
      costs_(costs),
      lookup_(std::move(lookup)) {
    config_.validate();
    costs_.validate();
    validate_country(country_);

    deciles_ = assign_deciles(country_.areas);
    portfolios_ = build_site_portfolios(country_, config_);

    std::vector<std::string> region_ids;
    for (const auto& r : country_.regions) region_ids.push_back(r.region_id);
    fiber_ = design_fiber(build_settlements(country_, config_), country_.core_edges, region_ids,
                          FiberParams{config_.core_pop_threshold, config_.core_edge_buffer_km});

    std::vector<double> region_area(country_.regions.size(), 0.0);
    region_of_.reserve(country_.areas.size());
    for (const auto& a : country_.areas) {
        region_of_.push_back(country_.region_index(a.region_id));
        region_area[region_of_.back()] += a.area_km2;
    }
    for (std::size_t r = 0; r < country_.regions.size(); ++r) {
        const auto& rf = fiber_.regions[r];
        RegionSupply s;
        s.isolated = rf.isolated || rf.fiber_nodes() == 0;
        if (!s.isolated) {
            s.fiber_cost = fiber_network_cost(rf, costs_);
            s.backhaul_km = mean_backhaul_distance(rf.fiber_nodes() / region_area[r]);
        }
        regions_.push_back(s);
    }

    // Revenue and users depend on the country only, not on the scenario.
    const Scenario probe{"probe", 1.0, 1.0, 1.0};
    for (std::size_t i = 0; i < country_.areas.size(); ++i) {
        const auto& a = country_.areas[i];
        const auto series = demand_series(a, country_.regions[region_of_[i]], config_, probe);
        std::vector<double> revenue;
        double peak = 0.0;
        for (const auto& p : series) {
            revenue.push_back(p.revenue_usd_km2 * a.area_km2);
            peak = std::max(peak, p.sp_users);
        }
        revenue_npv_.push_back(npv(revenue, config_.discount_rate));
        peak_sp_users_.push_back(peak);
        final_sp_users_.push_back(series.empty() ? 0.0 : series.back().sp_users);
    }
}

std::vector<DecileInputs> Assessment::dimension(const Scenario& scenario,
                                                const Strategy& strategy) const {
    const std::size_t n = country_.areas.size();
    const int years = config_.study_years();
    std::vector<AreaSites> sites(n);
    std::vector<double> region_required(country_.regions.size(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = country_.areas[i];
        const double traffic = traffic_density(peak_sp_users_[i], scenario.target(a.geotype),
                                               config_.overbooking_factor, a.area_km2);
        sites[i] = dimension_area(a.area_id, traffic, a.area_km2, portfolios_[i],
                                  strategy.generation, lookup_.curve(strategy.generation, a.geotype));
        region_required[region_of_[i]] += sites[i].required;
    }

    std::array<std::array<double, 2>, 3> site_npv{};
    for (auto g : kGeotypes) {
        site_npv[index_of(g)][0] = site_lifetime_cost(SiteKind::Greenfield, g, costs_, years,
                                                      config_.discount_rate, config_.wacc);
        site_npv[index_of(g)][1] = site_lifetime_cost(SiteKind::Upgrade, g, costs_, years,
                                                      config_.discount_rate, config_.wacc);
    }
    const double gross = 1.0 + config_.wacc;

    std::vector<DecileInputs> out(kDeciles);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = country_.areas[i];
        const auto& region = country_.regions[region_of_[i]];
        const auto& supply = regions_[region_of_[i]];
        const auto& s = sites[i];
        auto& d = out[static_cast<std::size_t>(deciles_[i] - 1)];
        const auto geo = index_of(a.geotype);

        d.population += a.population;
        d.area_km2 += a.area_km2;
        d.new_sites += s.greenfield;
        d.upgraded_sites += s.upgraded;
        d.ran += s.greenfield * site_npv[geo][0] + s.upgraded * site_npv[geo][1];
        // Isolated regions cannot reach fiber; every link is a long wireless hop.
        const double link = supply.isolated
                                ? costs_.wireless_link_large
                                : backhaul_cost(strategy.backhaul, supply.backhaul_km, a.geotype, costs_);
        d.backhaul += s.links() * link * gross;
        const double share = region_required[region_of_[i]];
        if (share > 0.0) d.core += supply.fiber_cost * s.required / share * gross;
        d.spectrum += spectrum_cost(strategy.bands, region.spectrum_price_coverage,
                                    region.spectrum_price_capacity, a.population);
        d.revenue += revenue_npv_[i];
        d.final_sp_users += final_sp_users_[i];
    }
    return out;
}

std::vector<DecileResult> Assessment::run(const Scenario& scenario, const Strategy& strategy,
                                          double spectrum_scalar) const {
    return finalize_deciles(dimension(scenario, strategy), scenario.name, strategy.name(),
                            spectrum_scalar, config_);
}

SweepResult Assessment::sweep(const std::vector<Scenario>& scenarios,
                              const std::vector<Strategy>& strategies,
                              const std::vector<double>& scalars, int threads) const {
    for (double s : scalars) {
        if (!(s >= 0.0 && s <= 1.0)) {
            throw ValidationError(fmt::format("spectrum scalar {} outside [0, 1]", s));
        }
    }
    const std::size_t cells = scenarios.size() * strategies.size();
    std::vector<std::vector<DecileResult>> baseline(cells);
    std::vector<std::vector<SensitivityRow>> rows(cells);
    parallel_for(cells, threads, [&](std::size_t c) {
        const auto& scenario = scenarios[c / strategies.size()];
        const auto& strategy = strategies[c % strategies.size()];
        const auto inputs = dimension(scenario, strategy);
        baseline[c] = finalize_deciles(inputs, scenario.name, strategy.name(), 1.0, config_);
        for (double scalar : scalars) {
            const auto priced =
                finalize_deciles(inputs, scenario.name, strategy.name(), scalar, config_);
            rows[c].push_back({scenario.name, strategy.name(), scalar, viability_frontier(priced)});
        }
    });
    SweepResult out;
    for (std::size_t c = 0; c < cells; ++c) {
        out.deciles.insert(out.deciles.end(), baseline[c].begin(), baseline[c].end());
        out.sensitivity.insert(out.sensitivity.end(), rows[c].begin(), rows[c].end());
    }
    return out;
}

SensitivityGrid spectrum_sensitivity(const Assessment& assessment,
                                     const std::vector<Scenario>& scenarios,
                                     const std::vector<Strategy>& strategies,
                                     const std::vector<double>& scalars, int threads) {
    return assessment.sweep(scenarios, strategies, scalars, threads).sensitivity;
}

}  // namespace bbtea
