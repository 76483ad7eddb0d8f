#ifndef BBTEA_SUPPLY_HPP
#define BBTEA_SUPPLY_HPP

#include "bbtea/country.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bbtea {

/// Existing sites in one area, split by legacy generation and by backhaul
/// technology. Both splits sum to existing_sites once allocated.
struct SitePortfolio {
    std::string area_id;
    std::int64_t existing_sites = 0;
    std::array<std::int64_t, 3> by_generation{};  // 4G, 3G, 2G
    std::array<std::int64_t, 4> by_backhaul{};     // indexed by BackhaulType

    /// Newest generation present, or None without sites.
    LegacyGeneration existing_generation() const;
    /// Most common backhaul class; ties go to the earlier class.
    std::optional<BackhaulType> backhaul_type() const;
};

/// Towers per area for one region. `areas` must be sorted by density,
/// densest first. Areas are taken until the covered population is reached;
/// the area that crosses the target contributes its covered part only.
/// Quotas are rounded by largest remainder so they sum to `towers` exactly.
std::vector<SitePortfolio> disaggregate_towers(std::span<const LocalArea> areas,
                                               std::int64_t towers, double population,
                                               double coverage_pct);

/// Splits `counts` (sites per area, densest area first) into ranked classes.
/// Class boundaries fall at the rounded cumulative fractions, so each class
/// receives a contiguous block of sites and totals stay within one site of
/// fraction * total.
std::vector<std::vector<std::int64_t>> split_ranked_sites(std::span<const std::int64_t> counts,
                                                          std::span<const double> fractions);

/// Fills by_backhaul: fiber to the densest sites, then copper, microwave and
/// satellite.
void allocate_backhaul(std::span<SitePortfolio> portfolios, const std::array<double, 4>& mix);

/// Fills by_generation: 4G to the densest sites, then 3G, then 2G.
void allocate_generations(std::span<SitePortfolio> portfolios,
                          const std::array<double, 3>& shares);

/// Existing sites for every area of the country, in area order.
std::vector<SitePortfolio> build_site_portfolios(const Country& country,
                                                 const ModelConfig& config);

struct Settlement {
    std::string settlement_id;
    std::string region_id;
    double population = 0.0;
    std::vector<std::string> member_area_ids;
    std::optional<Point> position;  // population-weighted centroid
    bool has_core_node = false;
};

/// Connected components of cells at or above `cell_threshold` persons/km^2,
/// joined only through `adjacency` and only within a region. Components
/// holding at least `settlement_threshold` persons become settlements.
std::vector<Settlement> build_settlements(const std::vector<LocalArea>& areas,
                                          double cell_threshold, double settlement_threshold,
                                          const Adjacency& adjacency);

/// As above, with per-region threshold overrides falling back to config.
std::vector<Settlement> build_settlements(const Country& country, const ModelConfig& config);

/// Mean distance to the nearest fiber node for a uniform node density.
double mean_backhaul_distance(double fiber_nodes_per_km2);

}  // namespace bbtea

#endif  // BBTEA_SUPPLY_HPP
