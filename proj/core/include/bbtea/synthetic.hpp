#ifndef BBTEA_SYNTHETIC_HPP
#define BBTEA_SYNTHETIC_HPP

#include "bbtea/country.hpp"

#include <cstdint>

namespace bbtea {

/// Knobs for the synthetic country. Areas are 1 km^2 cells on a square grid,
/// regions are rectangular blocks of that grid, and density is a log-normal
/// background lifted by exponential city peaks.
struct SyntheticParams {
    std::uint64_t seed = 1;
    int n_areas = 10000;
    int region_rows = 3;
    int region_cols = 3;

    double background_density = 60.0;   // persons/km^2, median rural level
    double background_sigma = 1.0;      // log-space spread
    int areas_per_city = 800;
    double city_peak_log_mean = 2.4;    // log of peak multiplier
    double city_peak_log_sigma = 0.5;
    double city_radius_min_km = 1.5;
    double city_radius_max_km = 4.0;
    double max_density = 1800.0;

    double people_per_tower = 2500.0;
    double coverage_min_pct = 70.0;
    double coverage_max_pct = 95.0;
    double cellpen_start_min = 0.50, cellpen_start_max = 0.60;
    double cellpen_end_min = 0.65, cellpen_end_max = 0.70;
    double sppen_start_min = 0.12, sppen_start_max = 0.16;
    double sppen_end_min = 0.24, sppen_end_max = 0.28;
    double arpu_low_min = 1.5, arpu_low_max = 2.0;
    double arpu_mid_min = 3.0, arpu_mid_max = 4.0;
    double arpu_high_min = 5.0, arpu_high_max = 6.5;
    double price_coverage_min = 0.2, price_coverage_max = 0.5;  // $/MHz/pop
    double price_capacity_min = 0.02, price_capacity_max = 0.1;
    std::array<double, 4> backhaul_mix{0.01, 0.03, 0.94, 0.02};

    void validate() const;
};

/// Deterministic in `params` and the config's study years and thresholds.
/// Includes grid positions, 4-neighbour adjacency and a core fiber spine
/// running through the city centres.
Country generate_synthetic_country(const SyntheticParams& params, const ModelConfig& config);

}  // namespace bbtea

#endif  // BBTEA_SYNTHETIC_HPP
