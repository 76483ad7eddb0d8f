#include "bbtea/capacity.hpp"

#include "bbtea/geometry.hpp"
#include "bbtea/parallel.hpp"
#include "csv.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>

namespace bbtea {

namespace {

constexpr std::uint64_t kUserStream = 0;

std::uint64_t band_stream_id(const SpectrumBand& band) {
    return 1000 + static_cast<std::uint64_t>(std::llround(band.frequency_mhz * 1000.0));
}

}  // namespace

double hex_site_density(double isd_km) { return 2.0 / (std::sqrt(3.0) * isd_km * isd_km); }

std::vector<double> isd_grid(double min_km, double max_km, int points) {
    if (points < 1 || !(min_km > 0.0) || max_km < min_km) {
        throw ValidationError("isd grid: need points >= 1 and 0 < min <= max");
    }
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(points));
    if (points == 1) return {min_km};
    const double ratio = std::log(max_km / min_km);
    for (int i = 0; i < points; ++i) {
        grid.push_back(i == points - 1 ? max_km
                                       : min_km * std::exp(ratio * i / (points - 1)));
    }
    return grid;
}

double area_capacity_mbps_km2(double se_bps_hz, int sectors, double sites_per_km2,
                              double effective_bandwidth_mhz, double traffic_load_pct) {
    return se_bps_hz * sectors * sites_per_km2 * effective_bandwidth_mhz * traffic_load_pct /
           100.0;
}

double percentile_of(std::vector<double> values, double percentile) {
    if (values.empty()) throw ValidationError("percentile of an empty sample");
    std::sort(values.begin(), values.end());
    const double rank = std::clamp(percentile, 0.0, 100.0) / 100.0 *
                        static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(rank));
    const auto hi = std::min(lo + 1, values.size() - 1);
    const double frac = rank - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

LinkSamples sample_links(const SpectrumBand& band, Geotype geotype, double isd_km, int samples,
                         SamplingKey key, const LinkBudgetParams& params) {
    const double isd_m = isd_km * 1000.0;
    const double radius_m = isd_m / std::sqrt(3.0);  // hexagon circumradius
    // One sector is the rhombus spanned by two hexagon vertices 120 degrees apart.
    const Point edge_a{radius_m, 0.0};
    const Point edge_b{radius_m * std::cos(2.0 * std::numbers::pi / 3.0),
                       radius_m * std::sin(2.0 * std::numbers::pi / 3.0)};
    std::array<Point, 6> interferers{};
    for (int k = 0; k < 6; ++k) {
        const double angle = std::numbers::pi / 6.0 + k * std::numbers::pi / 3.0;
        interferers[static_cast<std::size_t>(k)] = {isd_m * std::cos(angle),
                                                    isd_m * std::sin(angle)};
    }

    const double noise = noise_dbm(band.bandwidth_mhz * 1e6, params.noise_figure_db);
    const auto geo_id = static_cast<std::uint64_t>(index_of(geotype));
    const auto band_id = band_stream_id(band);

    LinkSamples out;
    out.sinr_db.reserve(static_cast<std::size_t>(samples));
    out.se.reserve(static_cast<std::size_t>(samples));
    std::array<double, 6> interference{};
    for (int s = 0; s < samples; ++s) {
        const auto sample_id = static_cast<std::uint64_t>(s);
        CounterRng user(key.seed, {geo_id, key.isd_index, sample_id, kUserStream});
        const double u = user.uniform();
        const double v = user.uniform();
        const Point pos{u * edge_a.x + v * edge_b.x, u * edge_a.y + v * edge_b.y};
        const double penetration = draw_penetration_loss(user, params);

        CounterRng link(key.seed, {geo_id, key.isd_index, sample_id, band_id});
        auto loss = [&](double d) {
            d = std::max(d, 1.0);
            const bool los = is_los(d, params);
            double pl = median_path_loss(band.frequency_mhz, d, geotype, los, params);
            const double shadow =
                link.normal(0.0, shadow_fading_sigma(band.frequency_mhz, d, geotype, los, params));
            if (params.shadow_fading) pl += shadow;
            return pl + penetration;
        };

        const double signal = received_power(params, loss(distance(pos, Point{})));
        for (std::size_t k = 0; k < interferers.size(); ++k) {
            interference[k] = received_power(params, loss(distance(pos, interferers[k])));
        }
        const double sinr = sinr_db(signal, interference, noise);
        out.sinr_db.push_back(sinr);
        out.se.push_back(se_from_sinr(sinr, band.generation));
    }
    return out;
}

LookupSpec lookup_spec_from(const ModelConfig& config, int threads) {
    LookupSpec spec;
    spec.isd_grid_km = isd_grid(config.isd_min_km, config.isd_max_km, config.isd_points);
    spec.samples_per_isd = config.samples_per_isd;
    spec.percentile = config.confidence_percentile;
    spec.traffic_load_pct = config.traffic_load_pct;
    spec.seed = config.rng_seed;
    spec.threads = threads;
    return spec;
}

CapacityLookup::CapacityLookup(std::vector<CapacityCurve> curves) : curves_(std::move(curves)) {}

bool CapacityLookup::has(Generation g, Geotype geo) const {
    return std::any_of(curves_.begin(), curves_.end(), [&](const CapacityCurve& c) {
        return c.generation == g && c.geotype == geo;
    });
}

const CapacityCurve& CapacityLookup::curve(Generation g, Geotype geo) const {
    for (const auto& c : curves_) {
        if (c.generation == g && c.geotype == geo) return c;
    }
    throw RuntimeFailure(fmt::format("capacity lookup has no curve for {} {}", to_string(g),
                                     to_string(geo)));
}

double CapacityLookup::percentile() const {
    return curves_.empty() ? 0.0 : curves_.front().percentile;
}

namespace {

struct BandPoint {
    double se_percentile = 0.0;
    double outage = 0.0;
};

CapacityCurve assemble_curve(Generation gen, Geotype geo, const LookupSpec& spec,
                             const std::vector<const SpectrumBand*>& bands,
                             const std::vector<std::vector<BandPoint>>& points) {
    CapacityCurve curve{gen, geo, spec.percentile, {}};
    for (std::size_t i = 0; i < spec.isd_grid_km.size(); ++i) {
        const double isd = spec.isd_grid_km[i];
        CapacityRow row{isd, hex_site_density(isd), 0.0, 0.0};
        for (std::size_t b = 0; b < bands.size(); ++b) {
            row.capacity_mbps_km2 += area_capacity_mbps_km2(
                points[b][i].se_percentile, spec.params.sectors, row.site_density,
                bands[b]->effective_bandwidth_mhz(), spec.traffic_load_pct);
            row.outage_fraction += points[b][i].outage / static_cast<double>(bands.size());
        }
        curve.rows.push_back(row);
    }
    std::sort(curve.rows.begin(), curve.rows.end(),
              [](const CapacityRow& a, const CapacityRow& b) { return a.site_density < b.site_density; });
    // Sampling noise must not make capacity fall as sites are added.
    for (std::size_t i = 1; i < curve.rows.size(); ++i) {
        curve.rows[i].capacity_mbps_km2 =
            std::max(curve.rows[i].capacity_mbps_km2, curve.rows[i - 1].capacity_mbps_km2);
    }
    return curve;
}

BandPoint simulate_point(const SpectrumBand& band, Geotype geo, std::size_t isd_index,
                         const LookupSpec& spec) {
    const auto samples = sample_links(band, geo, spec.isd_grid_km[isd_index], spec.samples_per_isd,
                                      SamplingKey{spec.seed, isd_index}, spec.params);
    const auto outages = std::count(samples.se.begin(), samples.se.end(), 0.0);
    return BandPoint{percentile_of(samples.se, spec.percentile),
                     static_cast<double>(outages) / static_cast<double>(samples.se.size())};
}

void validate_spec(const LookupSpec& spec) {
    if (spec.isd_grid_km.empty()) throw ValidationError("capacity lookup: empty ISD grid");
    if (spec.samples_per_isd < 100) {
        throw ValidationError("capacity lookup: samples_per_isd >= 100 required");
    }
    for (double isd : spec.isd_grid_km) {
        if (!(isd > 0.0)) throw ValidationError("capacity lookup: ISD must be positive");
    }
    for (const auto& b : spec.bands) b.validate();
}

}  // namespace

CapacityCurve simulate_capacity_curve(const Strategy& strategy, Geotype geotype,
                                      const LookupSpec& spec) {
    validate_spec(spec);
    std::vector<const SpectrumBand*> bands;
    for (const auto& b : strategy.bands) bands.push_back(&b);
    std::vector<std::vector<BandPoint>> points(bands.size(),
                                               std::vector<BandPoint>(spec.isd_grid_km.size()));
    const std::size_t n_isd = spec.isd_grid_km.size();
    parallel_for(bands.size() * n_isd, spec.threads, [&](std::size_t task) {
        const auto b = task / n_isd;
        const auto i = task % n_isd;
        points[b][i] = simulate_point(*bands[b], geotype, i, spec);
    });
    return assemble_curve(strategy.generation, geotype, spec, bands, points);
}

CapacityLookup build_capacity_lookup(const LookupSpec& spec) {
    validate_spec(spec);
    const std::size_t n_band = spec.bands.size();
    const std::size_t n_geo = kGeotypes.size();
    const std::size_t n_isd = spec.isd_grid_km.size();
    // points[band][geotype][isd]
    std::vector<std::vector<std::vector<BandPoint>>> points(
        n_band, std::vector<std::vector<BandPoint>>(n_geo, std::vector<BandPoint>(n_isd)));
    parallel_for(n_band * n_geo * n_isd, spec.threads, [&](std::size_t task) {
        const auto b = task / (n_geo * n_isd);
        const auto g = (task / n_isd) % n_geo;
        const auto i = task % n_isd;
        points[b][g][i] = simulate_point(spec.bands[b], kGeotypes[g], i, spec);
    });

    std::vector<CapacityCurve> curves;
    for (auto gen : kGenerations) {
        std::vector<const SpectrumBand*> bands;
        std::vector<std::size_t> band_idx;
        for (std::size_t b = 0; b < n_band; ++b) {
            if (spec.bands[b].generation == gen) {
                bands.push_back(&spec.bands[b]);
                band_idx.push_back(b);
            }
        }
        if (bands.empty()) continue;
        for (std::size_t g = 0; g < n_geo; ++g) {
            std::vector<std::vector<BandPoint>> gen_points;
            for (auto b : band_idx) gen_points.push_back(points[b][g]);
            curves.push_back(assemble_curve(gen, kGeotypes[g], spec, bands, gen_points));
        }
    }
    return CapacityLookup(std::move(curves));
}

DensityRequirement required_site_density(double traffic, const CapacityCurve& curve) {
    if (curve.rows.empty()) throw ValidationError("required_site_density: empty capacity curve");
    if (traffic <= 0.0) return {0.0, true};
    const auto& rows = curve.rows;
    if (traffic > rows.back().capacity_mbps_km2) return {rows.back().site_density, false};
    const auto it = std::find_if(rows.begin(), rows.end(), [&](const CapacityRow& r) {
        return r.capacity_mbps_km2 >= traffic;
    });
    if (it == rows.begin()) return {it->site_density, true};
    const auto& hi = *it;
    const auto& lo = *std::prev(it);
    const double t = (traffic - lo.capacity_mbps_km2) / (hi.capacity_mbps_km2 - lo.capacity_mbps_km2);
    return {lo.site_density + t * (hi.site_density - lo.site_density), true};
}

void write_lookup_csv(std::ostream& out, const CapacityLookup& lookup) {
    out << "generation,geotype,percentile,site_density,capacity_mbps_km2,isd_km,outage_fraction\n";
    for (const auto& c : lookup.curves()) {
        for (const auto& r : c.rows) {
            out << fmt::format("{},{},{},{},{},{},{}\n", to_string(c.generation),
                               to_string(c.geotype), c.percentile, r.site_density,
                               r.capacity_mbps_km2, r.isd_km, r.outage_fraction);
        }
    }
}

CapacityLookup read_lookup_csv(std::istream& in) {
    detail::CsvTable t(in, "capacity_lookup.csv");
    const auto c_gen = t.require("generation");
    const auto c_geo = t.require("geotype");
    const auto c_pct = t.require("percentile");
    const auto c_den = t.require("site_density");
    const auto c_cap = t.require("capacity_mbps_km2");
    const auto c_isd = t.find("isd_km");
    const auto c_out = t.find("outage_fraction");
    std::vector<CapacityCurve> curves;
    std::map<std::pair<Generation, Geotype>, std::size_t> index;
    for (std::size_t r = 0; r < t.rows(); ++r) {
        const auto gen = parse_generation(t.cell(r, c_gen));
        const auto geo = parse_geotype(t.cell(r, c_geo));
        const double pct = t.number(r, c_pct);
        auto [it, inserted] = index.emplace(std::pair{gen, geo}, curves.size());
        if (inserted) curves.push_back(CapacityCurve{gen, geo, pct, {}});
        auto& curve = curves[it->second];
        if (curve.percentile != pct) {
            throw ValidationError(t.where(r, c_pct) + ": mixed percentiles within one curve");
        }
        CapacityRow row;
        row.site_density = t.number(r, c_den);
        row.capacity_mbps_km2 = t.number(r, c_cap);
        row.isd_km = c_isd ? t.number(r, *c_isd) : std::sqrt(2.0 / (std::sqrt(3.0) * row.site_density));
        row.outage_fraction = c_out ? t.number(r, *c_out) : 0.0;
        if (!curve.rows.empty() && (row.site_density <= curve.rows.back().site_density ||
                                    row.capacity_mbps_km2 < curve.rows.back().capacity_mbps_km2)) {
            throw ValidationError(t.where(r) +
                                  ": rows must ascend in site_density with non-decreasing capacity");
        }
        curve.rows.push_back(row);
    }
    return CapacityLookup(std::move(curves));
}

}  // namespace bbtea
