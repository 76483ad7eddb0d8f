#ifndef BBTEA_COUNTRY_HPP
#define BBTEA_COUNTRY_HPP

#include "bbtea/config.hpp"
#include "bbtea/geometry.hpp"
#include "bbtea/types.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bbtea {

/// One local statistical area.
struct LocalArea {
    std::string area_id;
    std::string region_id;
    double population = 0.0;
    double area_km2 = 1.0;
    double luminosity_dn = 0.0;
    Geotype geotype = Geotype::Rural;
    double pop_density = 0.0;
    std::optional<Point> position;  // km, optional

    friend bool operator==(const LocalArea&, const LocalArea&) = default;
};

struct RegionRecord {
    std::string region_id;
    std::int64_t total_towers = 0;
    double coverage_pct = 0.0;
    std::map<int, double> cellpen_by_year;  // fraction of population
    std::map<int, double> sppen_by_year;    // fraction of cell users
    double arpu_low = 0.0;
    double arpu_mid = 0.0;
    double arpu_high = 0.0;
    double spectrum_price_coverage = 0.0;  // $/MHz/pop, sub-1 GHz
    double spectrum_price_capacity = 0.0;  // $/MHz/pop, above 1 GHz
    std::array<double, 4> backhaul_mix{};  // indexed by BackhaulType

    // Optional per-region overrides of the config defaults.
    std::optional<double> cell_threshold;
    std::optional<double> settlement_threshold;
    std::optional<std::array<double, 3>> legacy_shares;  // 4G, 3G, 2G

    double arpu(ArpuTier tier) const;
    /// Throws RuntimeFailure when `year` is not covered.
    double cellpen(int year) const;
    double sppen(int year) const;

    friend bool operator==(const RegionRecord&, const RegionRecord&) = default;
};

/// Undirected adjacency between areas, as index pairs into Country::areas.
using Adjacency = std::vector<std::pair<std::size_t, std::size_t>>;

struct Country {
    std::vector<RegionRecord> regions;
    std::vector<LocalArea> areas;
    Adjacency adjacency;
    std::vector<Polyline> core_edges;

    double total_population() const;
    const RegionRecord& region(std::string_view id) const;
    std::size_t region_index(std::string_view id) const;
};

Geotype classify_geotype(double pop_density, const ModelConfig& config);

void validate_area(const LocalArea& area);
void validate_region(const RegionRecord& region);
/// Validates every record and that every area references a known region.
void validate_country(const Country& country);

/// Fills pop_density and geotype from population, area and thresholds.
void derive_area_fields(LocalArea& area, const ModelConfig& config);

std::vector<LocalArea> read_areas_csv(std::istream& in, const ModelConfig& config);
std::vector<RegionRecord> read_regions_csv(std::istream& in, const ModelConfig& config);
Adjacency read_adjacency_csv(std::istream& in, const std::vector<LocalArea>& areas);
std::vector<Polyline> read_core_edges_csv(std::istream& in);

void write_areas_csv(std::ostream& out, const std::vector<LocalArea>& areas);
void write_regions_csv(std::ostream& out, const std::vector<RegionRecord>& regions);
void write_adjacency_csv(std::ostream& out, const Country& country);
void write_core_edges_csv(std::ostream& out, const std::vector<Polyline>& edges);

/// Derives 4-neighbourhood adjacency from unit-grid positions, same region only.
Adjacency grid_adjacency(const std::vector<LocalArea>& areas);

struct LoadedCountry {
    ModelConfig config;
    std::vector<RegionRecord> regions;
    std::vector<LocalArea> areas;
};

/// Loads and validates the config file, region table and area table.
LoadedCountry load_country(const std::filesystem::path& areas_file,
                           const std::filesystem::path& regions_file,
                           const std::filesystem::path& config_file);

/// Loads a full country, including the optional adjacency and core-edge
/// files named in `options`.
Country load_country_files(const RunOptions& options, const ModelConfig& config);

}  // namespace bbtea

#endif  // BBTEA_COUNTRY_HPP
