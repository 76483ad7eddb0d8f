#include "bbtea/country.hpp"

#include "csv.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <set>
#include <unordered_map>

namespace bbtea {

namespace {

constexpr std::array<std::string_view, 4> kMixColumns{"bh_fiber", "bh_copper", "bh_microwave",
                                                      "bh_satellite"};

void check(bool ok, const std::string& context, std::string_view invariant) {
    if (!ok) {
        throw ValidationError(fmt::format("{}: invariant violated: {}", context, invariant));
    }
}

double series_at(const std::map<int, double>& series, int year, std::string_view what,
                 const std::string& region) {
    const auto it = series.find(year);
    if (it == series.end()) {
        throw RuntimeFailure(
            fmt::format("region {}: missing {} for year {}", region, what, year));
    }
    return it->second;
}

/// Linear interpolation between anchor years; no extrapolation.
std::map<int, double> fill_series(const std::map<int, double>& anchors) {
    std::map<int, double> out;
    if (anchors.empty()) return out;
    auto prev = anchors.begin();
    out[prev->first] = prev->second;
    for (auto it = std::next(anchors.begin()); it != anchors.end(); ++it) {
        const int span = it->first - prev->first;
        for (int y = prev->first + 1; y <= it->first; ++y) {
            const double t = static_cast<double>(y - prev->first) / span;
            out[y] = y == it->first ? it->second : prev->second + t * (it->second - prev->second);
        }
        prev = it;
    }
    return out;
}

std::ifstream open(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path.string());
    return in;
}

}  // namespace

double RegionRecord::arpu(ArpuTier tier) const {
    switch (tier) {
        case ArpuTier::Low: return arpu_low;
        case ArpuTier::Mid: return arpu_mid;
        case ArpuTier::High: return arpu_high;
    }
    return 0.0;
}

double RegionRecord::cellpen(int year) const {
    return series_at(cellpen_by_year, year, "cellular penetration", region_id);
}

double RegionRecord::sppen(int year) const {
    return series_at(sppen_by_year, year, "smartphone penetration", region_id);
}

double Country::total_population() const {
    return std::accumulate(areas.begin(), areas.end(), 0.0,
                           [](double s, const LocalArea& a) { return s + a.population; });
}

std::size_t Country::region_index(std::string_view id) const {
    for (std::size_t i = 0; i < regions.size(); ++i) {
        if (regions[i].region_id == id) return i;
    }
    throw ValidationError("unknown region_id '" + std::string(id) + "'");
}

const RegionRecord& Country::region(std::string_view id) const {
    return regions[region_index(id)];
}

Geotype classify_geotype(double pop_density, const ModelConfig& config) {
    if (pop_density > config.urban_density_threshold) return Geotype::Urban;
    if (pop_density > config.suburban_density_threshold) return Geotype::Suburban;
    return Geotype::Rural;
}

void derive_area_fields(LocalArea& area, const ModelConfig& config) {
    area.pop_density = area.area_km2 > 0.0 ? area.population / area.area_km2 : 0.0;
    area.geotype = classify_geotype(area.pop_density, config);
}

void validate_area(const LocalArea& a) {
    const auto ctx = "area " + a.area_id;
    check(!a.area_id.empty(), ctx, "area_id non-empty");
    check(a.population >= 0.0, ctx, "population >= 0");
    check(a.area_km2 > 0.0, ctx, "area_km2 > 0");
    check(a.luminosity_dn >= 0.0 && a.luminosity_dn <= 64.0, ctx, "luminosity_dn in [0, 64]");
}

void validate_region(const RegionRecord& r) {
    const auto ctx = "region " + r.region_id;
    check(!r.region_id.empty(), ctx, "region_id non-empty");
    check(r.total_towers >= 0, ctx, "total_towers >= 0");
    check(r.coverage_pct >= 0.0 && r.coverage_pct <= 100.0, ctx, "coverage_pct in [0, 100]");
    check(r.arpu_low >= 0.0, ctx, "arpu_low >= 0");
    check(r.arpu_low <= r.arpu_mid && r.arpu_mid <= r.arpu_high, ctx,
          "arpu_low <= arpu_mid <= arpu_high");
    check(r.spectrum_price_coverage >= 0.0 && r.spectrum_price_capacity >= 0.0, ctx,
          "spectrum prices >= 0");
    double mix = 0.0;
    for (double f : r.backhaul_mix) {
        check(f >= 0.0, ctx, "backhaul mix fractions >= 0");
        mix += f;
    }
    check(std::abs(mix - 1.0) <= 1e-9, ctx, "backhaul mix fractions sum to 1");
    for (const auto* series : {&r.cellpen_by_year, &r.sppen_by_year}) {
        for (const auto& [year, v] : *series) {
            check(v >= 0.0 && v <= 1.0, ctx, "penetration fractions in [0, 1]");
        }
    }
    if (r.legacy_shares) {
        const auto& s = *r.legacy_shares;
        check(s[0] >= 0.0 && s[1] >= 0.0 && s[2] >= 0.0 &&
                  std::abs(s[0] + s[1] + s[2] - 1.0) <= 1e-9,
              ctx, "legacy generation shares sum to 1");
    }
}

void validate_country(const Country& country) {
    std::set<std::string, std::less<>> ids;
    for (const auto& r : country.regions) {
        validate_region(r);
        if (!ids.insert(r.region_id).second) {
            throw ValidationError("duplicate region_id '" + r.region_id + "'");
        }
    }
    std::set<std::string, std::less<>> area_ids;
    for (const auto& a : country.areas) {
        validate_area(a);
        if (!ids.contains(a.region_id)) {
            throw ValidationError(fmt::format("area {}: dangling region_id '{}'", a.area_id,
                                              a.region_id));
        }
        if (!area_ids.insert(a.area_id).second) {
            throw ValidationError("duplicate area_id '" + a.area_id + "'");
        }
    }
    for (const auto& [i, j] : country.adjacency) {
        if (i >= country.areas.size() || j >= country.areas.size()) {
            throw ValidationError("adjacency references an unknown area");
        }
    }
}

std::vector<LocalArea> read_areas_csv(std::istream& in, const ModelConfig& config) {
    detail::CsvTable t(in, "areas.csv");
    const auto c_id = t.require("area_id");
    const auto c_region = t.require("region_id");
    const auto c_pop = t.require("population");
    const auto c_area = t.require("area_km2");
    const auto c_dn = t.require("luminosity_dn");
    const auto c_x = t.find("x_km");
    const auto c_y = t.find("y_km");
    if (c_x.has_value() != c_y.has_value()) {
        throw ValidationError("areas.csv: x_km and y_km must be given together");
    }
    for (const auto& h : t.header()) {
        static const std::set<std::string, std::less<>> known{
            "area_id", "region_id", "population", "area_km2", "luminosity_dn", "x_km", "y_km"};
        if (!known.contains(h)) throw ValidationError("areas.csv: unknown column '" + h + "'");
    }

    std::vector<LocalArea> areas;
    areas.reserve(t.rows());
    for (std::size_t r = 0; r < t.rows(); ++r) {
        LocalArea a;
        a.area_id = t.cell(r, c_id);
        a.region_id = t.cell(r, c_region);
        a.population = t.number(r, c_pop);
        a.area_km2 = t.number(r, c_area);
        a.luminosity_dn = t.number(r, c_dn);
        if (c_x) a.position = Point{t.number(r, *c_x), t.number(r, *c_y)};
        try {
            validate_area(a);
        } catch (const ValidationError& e) {
            throw ValidationError(t.where(r) + ": " + e.what());
        }
        derive_area_fields(a, config);
        areas.push_back(std::move(a));
    }
    return areas;
}

std::vector<RegionRecord> read_regions_csv(std::istream& in, const ModelConfig& config) {
    (void)config;
    detail::CsvTable t(in, "regions.csv");
    const auto c_id = t.require("region_id");
    const auto c_towers = t.require("total_towers");
    const auto c_cov = t.require("coverage_pct");
    const auto c_lo = t.require("arpu_low");
    const auto c_mid = t.require("arpu_mid");
    const auto c_hi = t.require("arpu_high");
    const auto c_pcov = t.require("spec_price_cov");
    const auto c_pcap = t.require("spec_price_cap");
    std::array<std::size_t, 4> c_mix{};
    for (std::size_t i = 0; i < 4; ++i) c_mix[i] = t.require(kMixColumns[i]);
    const auto c_cell_thr = t.find("cell_threshold");
    const auto c_sett_thr = t.find("settlement_threshold");
    const auto c_s4 = t.find("share_4g");
    const auto c_s3 = t.find("share_3g");
    const auto c_s2 = t.find("share_2g");
    if ((c_s4.has_value() != c_s3.has_value()) || (c_s3.has_value() != c_s2.has_value())) {
        throw ValidationError("regions.csv: share_4g, share_3g and share_2g go together");
    }

    std::vector<std::pair<std::size_t, int>> cellpen_cols;
    std::vector<std::pair<std::size_t, int>> sppen_cols;
    static const std::set<std::string, std::less<>> fixed{
        "region_id", "total_towers", "coverage_pct", "arpu_low", "arpu_mid", "arpu_high",
        "spec_price_cov", "spec_price_cap", "bh_fiber", "bh_copper", "bh_microwave",
        "bh_satellite", "cell_threshold", "settlement_threshold", "share_4g", "share_3g",
        "share_2g"};
    for (std::size_t i = 0; i < t.header().size(); ++i) {
        const std::string_view h = t.header()[i];
        if (fixed.contains(h)) continue;
        auto year_of = [&](std::string_view prefix) {
            return detail::parse_int<int>(h.substr(prefix.size()),
                                          "regions.csv column " + std::string(h));
        };
        if (h.starts_with("cellpen_")) {
            cellpen_cols.emplace_back(i, year_of("cellpen_"));
        } else if (h.starts_with("sppen_")) {
            sppen_cols.emplace_back(i, year_of("sppen_"));
        } else {
            throw ValidationError("regions.csv: unknown column '" + std::string(h) + "'");
        }
    }

    std::vector<RegionRecord> regions;
    for (std::size_t r = 0; r < t.rows(); ++r) {
        RegionRecord rec;
        rec.region_id = t.cell(r, c_id);
        rec.total_towers = t.integer<std::int64_t>(r, c_towers);
        rec.coverage_pct = t.number(r, c_cov);
        rec.arpu_low = t.number(r, c_lo);
        rec.arpu_mid = t.number(r, c_mid);
        rec.arpu_high = t.number(r, c_hi);
        rec.spectrum_price_coverage = t.number(r, c_pcov);
        rec.spectrum_price_capacity = t.number(r, c_pcap);
        for (std::size_t i = 0; i < 4; ++i) rec.backhaul_mix[i] = t.number(r, c_mix[i]);
        if (c_cell_thr && !t.cell(r, *c_cell_thr).empty()) {
            rec.cell_threshold = t.number(r, *c_cell_thr);
        }
        if (c_sett_thr && !t.cell(r, *c_sett_thr).empty()) {
            rec.settlement_threshold = t.number(r, *c_sett_thr);
        }
        if (c_s4 && !t.cell(r, *c_s4).empty()) {
            rec.legacy_shares = std::array<double, 3>{t.number(r, *c_s4), t.number(r, *c_s3),
                                                      t.number(r, *c_s2)};
        }
        std::map<int, double> cellpen;
        std::map<int, double> sppen;
        for (auto [col, year] : cellpen_cols) cellpen[year] = t.number(r, col);
        for (auto [col, year] : sppen_cols) sppen[year] = t.number(r, col);
        rec.cellpen_by_year = fill_series(cellpen);
        rec.sppen_by_year = fill_series(sppen);
        try {
            validate_region(rec);
        } catch (const ValidationError& e) {
            throw ValidationError(t.where(r) + ": " + e.what());
        }
        regions.push_back(std::move(rec));
    }
    return regions;
}

Adjacency read_adjacency_csv(std::istream& in, const std::vector<LocalArea>& areas) {
    detail::CsvTable t(in, "adjacency.csv");
    const auto c_a = t.require("area_id_a");
    const auto c_b = t.require("area_id_b");
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < areas.size(); ++i) index.emplace(areas[i].area_id, i);
    Adjacency adj;
    for (std::size_t r = 0; r < t.rows(); ++r) {
        const auto ia = index.find(t.cell(r, c_a));
        const auto ib = index.find(t.cell(r, c_b));
        if (ia == index.end() || ib == index.end()) {
            throw ValidationError(t.where(r) + ": unknown area_id");
        }
        adj.emplace_back(ia->second, ib->second);
    }
    return adj;
}

std::vector<Polyline> read_core_edges_csv(std::istream& in) {
    detail::CsvTable t(in, "core_edges.csv");
    const auto c_edge = t.require("edge_id");
    const auto c_x = t.require("x_km");
    const auto c_y = t.require("y_km");
    std::vector<Polyline> edges;
    std::map<std::string, std::size_t> index;
    for (std::size_t r = 0; r < t.rows(); ++r) {
        const auto& id = t.cell(r, c_edge);
        auto [it, inserted] = index.emplace(id, edges.size());
        if (inserted) edges.emplace_back();
        edges[it->second].push_back(Point{t.number(r, c_x), t.number(r, c_y)});
    }
    return edges;
}

void write_areas_csv(std::ostream& out, const std::vector<LocalArea>& areas) {
    const bool coords = !areas.empty() && areas.front().position.has_value();
    out << "area_id,region_id,population,area_km2,luminosity_dn";
    if (coords) out << ",x_km,y_km";
    out << '\n';
    for (const auto& a : areas) {
        out << fmt::format("{},{},{},{},{}", a.area_id, a.region_id, a.population, a.area_km2,
                           a.luminosity_dn);
        if (coords) {
            const Point p = a.position.value_or(Point{});
            out << fmt::format(",{},{}", p.x, p.y);
        }
        out << '\n';
    }
}

void write_regions_csv(std::ostream& out, const std::vector<RegionRecord>& regions) {
    std::set<int> years;
    for (const auto& r : regions) {
        for (const auto& [y, v] : r.cellpen_by_year) years.insert(y);
        for (const auto& [y, v] : r.sppen_by_year) years.insert(y);
    }
    const bool shares = std::any_of(regions.begin(), regions.end(),
                                    [](const RegionRecord& r) { return r.legacy_shares.has_value(); });
    out << "region_id,total_towers,coverage_pct,arpu_low,arpu_mid,arpu_high,spec_price_cov,"
           "spec_price_cap,bh_fiber,bh_copper,bh_microwave,bh_satellite";
    for (int y : years) out << ",cellpen_" << y;
    for (int y : years) out << ",sppen_" << y;
    if (shares) out << ",share_4g,share_3g,share_2g";
    out << '\n';
    for (const auto& r : regions) {
        out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}", r.region_id, r.total_towers,
                           r.coverage_pct, r.arpu_low, r.arpu_mid, r.arpu_high,
                           r.spectrum_price_coverage, r.spectrum_price_capacity,
                           r.backhaul_mix[0], r.backhaul_mix[1], r.backhaul_mix[2],
                           r.backhaul_mix[3]);
        for (const auto* series : {&r.cellpen_by_year, &r.sppen_by_year}) {
            for (int y : years) {
                const auto it = series->find(y);
                out << ',';
                if (it != series->end()) out << fmt::format("{}", it->second);
            }
        }
        if (shares) {
            if (r.legacy_shares) {
                const auto& s = *r.legacy_shares;
                out << fmt::format(",{},{},{}", s[0], s[1], s[2]);
            } else {
                out << ",,,";
            }
        }
        out << '\n';
    }
}

void write_adjacency_csv(std::ostream& out, const Country& country) {
    out << "area_id_a,area_id_b\n";
    for (const auto& [i, j] : country.adjacency) {
        out << country.areas[i].area_id << ',' << country.areas[j].area_id << '\n';
    }
}

void write_core_edges_csv(std::ostream& out, const std::vector<Polyline>& edges) {
    out << "edge_id,x_km,y_km\n";
    for (std::size_t e = 0; e < edges.size(); ++e) {
        for (const auto& p : edges[e]) out << fmt::format("E{},{},{}\n", e, p.x, p.y);
    }
}

Adjacency grid_adjacency(const std::vector<LocalArea>& areas) {
    // Keyed by rounded grid coordinates; positions are cell centres on a 1 km grid.
    std::map<std::pair<long, long>, std::size_t> cells;
    for (std::size_t i = 0; i < areas.size(); ++i) {
        if (!areas[i].position) continue;
        cells.emplace(std::pair{std::lround(std::floor(areas[i].position->x)),
                                std::lround(std::floor(areas[i].position->y))},
                      i);
    }
    Adjacency adj;
    for (const auto& [key, i] : cells) {
        for (const auto& [dx, dy] : {std::pair{1L, 0L}, std::pair{0L, 1L}}) {
            const auto it = cells.find({key.first + dx, key.second + dy});
            if (it != cells.end() && areas[i].region_id == areas[it->second].region_id) {
                adj.emplace_back(i, it->second);
            }
        }
    }
    return adj;
}

LoadedCountry load_country(const std::filesystem::path& areas_file,
                           const std::filesystem::path& regions_file,
                           const std::filesystem::path& config_file) {
    LoadedCountry out;
    out.config = load_settings(config_file).model;
    out.config.validate();
    auto rin = open(regions_file);
    out.regions = read_regions_csv(rin, out.config);
    auto ain = open(areas_file);
    out.areas = read_areas_csv(ain, out.config);
    Country check_country{out.regions, out.areas, {}, {}};
    validate_country(check_country);
    return out;
}

Country load_country_files(const RunOptions& options, const ModelConfig& config) {
    Country c;
    auto rin = open(options.regions_csv);
    c.regions = read_regions_csv(rin, config);
    auto ain = open(options.areas_csv);
    c.areas = read_areas_csv(ain, config);
    if (!options.adjacency_csv.empty()) {
        auto in = open(options.adjacency_csv);
        c.adjacency = read_adjacency_csv(in, c.areas);
    } else {
        c.adjacency = grid_adjacency(c.areas);
    }
    if (!options.core_edges_csv.empty()) {
        auto in = open(options.core_edges_csv);
        c.core_edges = read_core_edges_csv(in);
    }
    validate_country(c);
    return c;
}

}  // namespace bbtea
