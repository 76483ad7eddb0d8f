#ifndef BBTEA_CAPACITY_HPP
#define BBTEA_CAPACITY_HPP

#include "bbtea/config.hpp"
#include "bbtea/radio.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace bbtea {

/// Sites per km^2 of a hexagonal lattice with the given inter-site distance.
double hex_site_density(double isd_km);

/// `points` inter-site distances, log-spaced over [min_km, max_km].
std::vector<double> isd_grid(double min_km, double max_km, int points);

/// Area capacity for one band: SE * sectors * site density * bandwidth * load.
double area_capacity_mbps_km2(double se_bps_hz, int sectors, double sites_per_km2,
                              double effective_bandwidth_mhz, double traffic_load_pct);

/// Value at `percentile` (0-100) with linear interpolation between order
/// statistics. `values` is copied and sorted.
double percentile_of(std::vector<double> values, double percentile);

/// Per-user SINR and spectral-efficiency draws for one band at one ISD:
/// a user placed uniformly in one sector of the serving site, interfered by
/// the first hexagonal ring of six co-channel sites.
struct LinkSamples {
    std::vector<double> sinr_db;
    std::vector<double> se;
};

struct SamplingKey {
    std::uint64_t seed = 0;
    std::size_t isd_index = 0;
};

LinkSamples sample_links(const SpectrumBand& band, Geotype geotype, double isd_km, int samples,
                         SamplingKey key, const LinkBudgetParams& params = {});

struct CapacityRow {
    double isd_km = 0.0;
    double site_density = 0.0;       // sites/km^2
    double capacity_mbps_km2 = 0.0;  // summed over the generation's bands
    double outage_fraction = 0.0;    // mean share of samples below CQI 1

    friend bool operator==(const CapacityRow&, const CapacityRow&) = default;
};

/// Capacity by site density for one (generation, geotype, percentile).
struct CapacityCurve {
    Generation generation = Generation::G4;
    Geotype geotype = Geotype::Urban;
    double percentile = 50.0;
    std::vector<CapacityRow> rows;  // ascending site density

    friend bool operator==(const CapacityCurve&, const CapacityCurve&) = default;
};

struct LookupSpec {
    std::vector<SpectrumBand> bands = default_bands();
    std::vector<double> isd_grid_km = isd_grid(0.4, 40.0, 25);
    int samples_per_isd = 1000;
    double percentile = 50.0;
    double traffic_load_pct = 50.0;
    std::uint64_t seed = 1;
    int threads = 1;
    LinkBudgetParams params;
};

LookupSpec lookup_spec_from(const ModelConfig& config, int threads);

class CapacityLookup {
public:
    CapacityLookup() = default;
    explicit CapacityLookup(std::vector<CapacityCurve> curves);

    const CapacityCurve& curve(Generation g, Geotype geo) const;
    bool has(Generation g, Geotype geo) const;
    const std::vector<CapacityCurve>& curves() const { return curves_; }
    double percentile() const;

    friend bool operator==(const CapacityLookup&, const CapacityLookup&) = default;

private:
    std::vector<CapacityCurve> curves_;
};

/// Capacity curve for one strategy's band portfolio in one geotype.
CapacityCurve simulate_capacity_curve(const Strategy& strategy, Geotype geotype,
                                      const LookupSpec& spec);

/// Curves for every generation present in `spec.bands` and every geotype.
/// Work is split over (band, geotype, ISD) and merged by index, so the
/// result does not depend on `spec.threads`.
CapacityLookup build_capacity_lookup(const LookupSpec& spec);

struct DensityRequirement {
    double sites_per_km2 = 0.0;
    bool serveable = true;  // false: demand exceeds the densest tabulated row
};

/// Smallest site density meeting `traffic_mbps_km2`, interpolating linearly
/// between bracketing rows.
DensityRequirement required_site_density(double traffic_mbps_km2, const CapacityCurve& curve);

void write_lookup_csv(std::ostream& out, const CapacityLookup& lookup);
CapacityLookup read_lookup_csv(std::istream& in);

}  // namespace bbtea

#endif  // BBTEA_CAPACITY_HPP
