#ifndef BBTEA_ASSESSMENT_HPP
#define BBTEA_ASSESSMENT_HPP

#include "bbtea/capacity.hpp"
#include "bbtea/cost.hpp"
#include "bbtea/country.hpp"
#include "bbtea/fiber.hpp"
#include "bbtea/supply.hpp"

#include <span>
#include <string>
#include <vector>

namespace bbtea {

inline constexpr int kDeciles = 10;

/// Decile (1 = densest) for every area, in input order. Areas are ranked by
/// density, ties by area id, and binned on the midpoint of their cumulative
/// population. Labels never skip a decile, so when one area holds most of
/// the population the areas after it still fill the following deciles.
std::vector<int> assign_deciles(const std::vector<LocalArea>& areas);

/// Sites needed in one area and where they come from. Counts are real-valued.
struct AreaSites {
    double required = 0.0;
    double reused = 0.0;      // existing 4G sites used as-is under a 4G strategy
    double upgraded = 0.0;    // existing sites carrying the strategy's upgrade
    double greenfield = 0.0;

    double links() const { return upgraded + greenfield; }
};

/// Sizes an area for its peak traffic. Throws RuntimeFailure naming the
/// area when the demand exceeds the densest tabulated capacity.
AreaSites dimension_area(const std::string& area_id, double peak_traffic_mbps_km2,
                         double area_km2, const SitePortfolio& existing, Generation generation,
                         const CapacityCurve& curve);

struct CrossSubsidy {
    std::vector<double> adjusted_revenue;
    std::vector<double> donated;
    std::vector<double> received;
    std::vector<double> subsidy;
    double pool = 0.0;
    double applied = 0.0;
};

/// Pools the excess of every self-funding decile above cost * (1 + threshold)
/// and spends it on the shortfalls of the others, densest first. Donors give
/// in proportion to their excess.
CrossSubsidy cross_subsidize(std::span<const double> costs, std::span<const double> revenues,
                             double threshold_pct);

/// Per-decile sums before the cost stack is applied. Spectrum is at unit
/// price scalar.
struct DecileInputs {
    double population = 0.0;
    double area_km2 = 0.0;
    double new_sites = 0.0;
    double upgraded_sites = 0.0;
    double ran = 0.0;
    double backhaul = 0.0;
    double core = 0.0;
    double spectrum = 0.0;
    double revenue = 0.0;        // NPV
    double final_sp_users = 0.0;
};

struct DecileResult {
    std::string scenario;
    std::string strategy;
    int decile = 0;
    double population = 0.0;
    double area_km2 = 0.0;
    double new_sites = 0.0;
    double upgraded_sites = 0.0;
    CostBreakdown cost;
    double revenue_npv = 0.0;        // before cross-subsidy
    double revenue_adjusted = 0.0;   // after cross-subsidy
    double cumulative_cost = 0.0;
    double cumulative_revenue = 0.0;  // of adjusted revenue
    bool viable = false;
    double subsidy_required = 0.0;
    double cost_per_user = 0.0;
};

/// Cost stack, cross-subsidy and running sums over ten decile inputs.
std::vector<DecileResult> finalize_deciles(std::span<const DecileInputs> inputs,
                                           const std::string& scenario,
                                           const std::string& strategy, double spectrum_scalar,
                                           const ModelConfig& config);

/// 10 x the largest d with cumulative revenue covering cumulative cost for
/// every decile up to d.
double viability_frontier(std::span<const DecileResult> deciles);

struct SensitivityRow {
    std::string scenario;
    std::string strategy;
    double spectrum_scalar = 1.0;
    double max_viable_coverage_pct = 0.0;
};

using SensitivityGrid = std::vector<SensitivityRow>;

struct SweepResult {
    std::vector<DecileResult> deciles;  // unit scalar, by (scenario, strategy, decile)
    SensitivityGrid sensitivity;        // by (scenario, strategy, scalar)
};

/// Country-level preparation shared by every scenario and strategy: deciles,
/// existing sites, fiber design and revenue.
class Assessment {
public:
    Assessment(Country country, ModelConfig config, UnitCosts costs, CapacityLookup lookup);

    std::vector<DecileInputs> dimension(const Scenario& scenario, const Strategy& strategy) const;

    std::vector<DecileResult> run(const Scenario& scenario, const Strategy& strategy,
                                  double spectrum_scalar = 1.0) const;

    /// Every (scenario, strategy) cell in parallel; each cell is dimensioned
    /// once and re-priced for every scalar.
    SweepResult sweep(const std::vector<Scenario>& scenarios,
                      const std::vector<Strategy>& strategies, const std::vector<double>& scalars,
                      int threads) const;

    const Country& country() const { return country_; }
    const std::vector<int>& deciles() const { return deciles_; }
    const std::vector<SitePortfolio>& portfolios() const { return portfolios_; }
    const FiberNetwork& fiber() const { return fiber_; }

private:
    struct RegionSupply {
        double fiber_cost = 0.0;
        bool isolated = false;
        double backhaul_km = 0.0;
    };

    Country country_;
    ModelConfig config_;
    UnitCosts costs_;
    CapacityLookup lookup_;
    std::vector<int> deciles_;
    std::vector<std::size_t> region_of_;
    std::vector<SitePortfolio> portfolios_;
    FiberNetwork fiber_;
    std::vector<RegionSupply> regions_;
    std::vector<double> revenue_npv_;
    std::vector<double> peak_sp_users_;
    std::vector<double> final_sp_users_;
};

/// Max viable coverage for each scalar, re-running the assessment.
SensitivityGrid spectrum_sensitivity(const Assessment& assessment,
                                     const std::vector<Scenario>& scenarios,
                                     const std::vector<Strategy>& strategies,
                                     const std::vector<double>& scalars, int threads = 1);

}  // namespace bbtea

#endif  // BBTEA_ASSESSMENT_HPP
