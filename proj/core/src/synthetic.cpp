#include "bbtea/synthetic.hpp"

#include "bbtea/rng.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace bbtea {

namespace {

enum Stream : std::uint64_t { kCell = 1, kCity = 2, kRegion = 3 };

double lerp(double a, double b, double t) { return a + (b - a) * t; }

double draw(CounterRng& rng, double lo, double hi) { return lerp(lo, hi, rng.uniform()); }

struct City {
    Point centre;
    double peak = 0.0;
    double radius_km = 1.0;
};

}  // namespace

void SyntheticParams::validate() const {
    if (n_areas < 10) throw ValidationError("invariant violated: synthetic n_areas >= 10");
    if (region_rows < 1 || region_cols < 1) {
        throw ValidationError("invariant violated: synthetic region grid >= 1x1");
    }
    if (!(background_density > 0.0) || !(max_density > 0.0) || background_sigma < 0.0) {
        throw ValidationError("invariant violated: synthetic densities > 0");
    }
    if (areas_per_city < 1) throw ValidationError("invariant violated: areas_per_city >= 1");
    if (!(city_radius_min_km > 0.0) || city_radius_max_km < city_radius_min_km) {
        throw ValidationError("invariant violated: 0 < city radius min <= max");
    }
    if (!(people_per_tower > 0.0)) throw ValidationError("invariant violated: people_per_tower > 0");
}

Country generate_synthetic_country(const SyntheticParams& params, const ModelConfig& config) {
    params.validate();
    config.validate();
    const int n = params.n_areas;
    const int width = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    const int height = (n + width - 1) / width;

    std::vector<City> cities(static_cast<std::size_t>(std::max(3, n / params.areas_per_city)));
    for (std::size_t k = 0; k < cities.size(); ++k) {
        CounterRng rng(params.seed, {kCity, k});
        cities[k].centre = {rng.uniform() * width, rng.uniform() * height};
        cities[k].peak = std::exp(rng.normal(params.city_peak_log_mean, params.city_peak_log_sigma));
        cities[k].radius_km = draw(rng, params.city_radius_min_km, params.city_radius_max_km);
    }

    Country country;
    auto region_of = [&](int col, int row) {
        const int rc = std::min(params.region_cols - 1, col * params.region_cols / width);
        const int rr = std::min(params.region_rows - 1, row * params.region_rows / height);
        return rr * params.region_cols + rc;
    };
    const int n_regions = params.region_rows * params.region_cols;
    std::vector<double> region_pop(static_cast<std::size_t>(n_regions), 0.0);

    country.areas.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int col = i % width;
        const int row = i / width;
        const Point pos{col + 0.5, row + 0.5};
        CounterRng rng(params.seed, {kCell, static_cast<std::uint64_t>(i)});
        double lift = 1.0;
        for (const auto& c : cities) lift += c.peak * std::exp(-distance(pos, c.centre) / c.radius_km);
        const double density =
            std::min(params.max_density,
                     params.background_density * std::exp(rng.normal(0.0, params.background_sigma)) * lift);

        LocalArea a;
        a.area_id = fmt::format("A{:05d}", i);
        const int r = region_of(col, row);
        a.region_id = fmt::format("R{:02d}", r);
        a.area_km2 = 1.0;
        a.population = std::round(density);
        a.position = pos;
        // Night lights track log density with some scatter.
        a.luminosity_dn =
            std::clamp(2.5 * std::log(std::max(density, 1.0) / 60.0) + rng.normal(0.0, 0.8), 0.0, 63.0);
        derive_area_fields(a, config);
        region_pop[static_cast<std::size_t>(r)] += a.population;
        country.areas.push_back(std::move(a));
    }

    for (int r = 0; r < n_regions; ++r) {
        CounterRng rng(params.seed, {kRegion, static_cast<std::uint64_t>(r)});
        RegionRecord rec;
        rec.region_id = fmt::format("R{:02d}", r);
        rec.total_towers = std::llround(region_pop[static_cast<std::size_t>(r)] /
                                        params.people_per_tower * draw(rng, 0.8, 1.2));
        rec.coverage_pct = draw(rng, params.coverage_min_pct, params.coverage_max_pct);
        const double cp0 = draw(rng, params.cellpen_start_min, params.cellpen_start_max);
        const double cp1 = draw(rng, params.cellpen_end_min, params.cellpen_end_max);
        const double sp0 = draw(rng, params.sppen_start_min, params.sppen_start_max);
        const double sp1 = draw(rng, params.sppen_end_min, params.sppen_end_max);
        const int years = config.study_years();
        for (int y = 0; y < years; ++y) {
            const double t = years > 1 ? static_cast<double>(y) / (years - 1) : 1.0;
            rec.cellpen_by_year[config.study_start_year + y] = lerp(cp0, cp1, t);
            rec.sppen_by_year[config.study_start_year + y] = lerp(sp0, sp1, t);
        }
        rec.arpu_low = draw(rng, params.arpu_low_min, params.arpu_low_max);
        rec.arpu_mid = draw(rng, params.arpu_mid_min, params.arpu_mid_max);
        rec.arpu_high = draw(rng, params.arpu_high_min, params.arpu_high_max);
        rec.spectrum_price_coverage = draw(rng, params.price_coverage_min, params.price_coverage_max);
        rec.spectrum_price_capacity = draw(rng, params.price_capacity_min, params.price_capacity_max);
        rec.backhaul_mix = params.backhaul_mix;
        country.regions.push_back(std::move(rec));
    }

    std::vector<City> spine = cities;
    std::sort(spine.begin(), spine.end(), [](const City& a, const City& b) {
        return a.centre.x != b.centre.x ? a.centre.x < b.centre.x : a.centre.y < b.centre.y;
    });
    Polyline line;
    for (const auto& c : spine) line.push_back(c.centre);
    country.core_edges.push_back(std::move(line));

    country.adjacency = grid_adjacency(country.areas);
    validate_country(country);
    return country;
}

}  // namespace bbtea
