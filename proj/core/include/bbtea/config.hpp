#ifndef BBTEA_CONFIG_HPP
#define BBTEA_CONFIG_HPP

#include "bbtea/types.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace bbtea {

enum class TaxBase { Network, Profit };

struct ModelConfig {
    int study_start_year = 2020;
    int study_end_year = 2030;
    double discount_rate = 0.05;
    double wacc = 0.10;
    double admin_pct = 0.20;  // fraction of network cost
    double tax_rate_pct = 22.0;
    TaxBase tax_base = TaxBase::Network;
    double profit_margin_pct = 20.0;
    double excess_profit_threshold_pct = 10.0;
    double overbooking_factor = 20.0;
    int networks = 4;
    double traffic_load_pct = 50.0;
    double confidence_percentile = 50.0;
    std::uint64_t rng_seed = 1;

    // Geotype classification, persons/km^2.
    double urban_density_threshold = 1500.0;
    double suburban_density_threshold = 500.0;

    // Settlement layer and fiber design.
    double cell_threshold = 500.0;          // persons/km^2
    double settlement_threshold = 1000.0;   // persons
    double core_pop_threshold = 10000.0;    // persons
    double core_edge_buffer_km = 2.0;

    // Share of existing sites per legacy generation, densest sites newest.
    double existing_share_4g = 0.5;
    double existing_share_3g = 0.3;
    double existing_share_2g = 0.2;

    // Capacity lookup sweep.
    double isd_min_km = 0.4;
    double isd_max_km = 40.0;
    int isd_points = 25;
    int samples_per_isd = 1000;

    int study_years() const { return study_end_year - study_start_year + 1; }

    /// Throws ValidationError naming the first violated invariant.
    void validate() const;
};

/// Per-user capacity targets by geotype, Mbps.
struct Scenario {
    std::string name;
    double target_mbps_urban = 0.0;
    double target_mbps_suburban = 0.0;
    double target_mbps_rural = 0.0;

    double target(Geotype g) const;
    void validate() const;
};

struct SpectrumBand {
    double frequency_mhz = 0.0;
    double bandwidth_mhz = 0.0;  // downlink carrier
    Duplex duplex = Duplex::Fdd;
    double tdd_dl_fraction = 0.8;
    Generation generation = Generation::G4;

    /// Sub-1 GHz bands are priced as coverage spectrum.
    bool is_coverage() const { return frequency_mhz < 1000.0; }
    /// Bandwidth available to downlink traffic, MHz.
    double effective_bandwidth_mhz() const;
    void validate() const;
};

enum class Mimo { X2, X4 };

struct Strategy {
    Generation generation = Generation::G4;
    BackhaulFamily backhaul = BackhaulFamily::Wireless;
    std::vector<SpectrumBand> bands;
    Mimo mimo = Mimo::X2;

    std::string name() const;
    void validate() const;
};

/// The five-band portfolio used by both generations.
std::vector<SpectrumBand> default_bands();
std::vector<SpectrumBand> bands_for(Generation g, const std::vector<SpectrumBand>& all);

Strategy make_strategy(Generation g, BackhaulFamily b,
                       const std::vector<SpectrumBand>& all = default_bands());
/// Parses names like "4G_wireless" or "5G_NSA_fiber".
Strategy parse_strategy(std::string_view name,
                        const std::vector<SpectrumBand>& all = default_bands());
std::vector<Strategy> default_strategies();

std::vector<Scenario> default_scenarios();
Scenario scenario_by_name(std::string_view name);

/// Options that select inputs and outputs for a run. Every field has a
/// config-file key and a command-line flag.
struct RunOptions {
    std::filesystem::path areas_csv;
    std::filesystem::path regions_csv;
    std::filesystem::path adjacency_csv;
    std::filesystem::path core_edges_csv;
    std::filesystem::path unit_costs_csv;
    bool synthetic = false;
    int synthetic_areas = 10000;
    std::vector<std::string> scenarios{"S1", "S2", "S3"};
    std::vector<std::string> strategies{"4G_wireless", "4G_fiber", "5G_NSA_wireless",
                                        "5G_NSA_fiber"};
    std::vector<double> spectrum_scalars{1.0, 0.8, 0.6, 0.4, 0.2, 0.0};
    std::filesystem::path out_dir = "out";
    std::filesystem::path lookup_cache;
    int threads = 1;
};

struct Settings {
    ModelConfig model;
    RunOptions run;
};

/// Parses flat `key=value` text. Blank lines and `#` comments are ignored;
/// unknown keys and malformed values are errors.
Settings parse_settings(std::string_view text);
Settings load_settings(const std::filesystem::path& path);

/// Applies one key=value pair to `settings`; used by both the file parser
/// and the command line.
void apply_setting(Settings& settings, std::string_view key, std::string_view value);

/// Canonical key=value rendering, sorted by key. Stable across runs.
std::string render_settings(const Settings& settings);

std::vector<double> parse_double_list(std::string_view text);
std::vector<std::string> parse_string_list(std::string_view text);

}  // namespace bbtea

#endif  // BBTEA_CONFIG_HPP
