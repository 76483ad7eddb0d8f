#include "fixtures.hpp"

#include "bbtea/fiber.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

namespace fixture {

bbtea::LocalArea area(std::string id, std::string region, double population, double km2, double dn,
                      double x, double y, const bbtea::ModelConfig& config) {
    bbtea::LocalArea a;
    a.area_id = std::move(id);
    a.region_id = std::move(region);
    a.population = population;
    a.area_km2 = km2;
    a.luminosity_dn = dn;
    a.position = bbtea::Point{x, y};
    bbtea::derive_area_fields(a, config);
    return a;
}

bbtea::RegionRecord region(std::string id, double cellpen, double sppen,
                           const bbtea::ModelConfig& config) {
    bbtea::RegionRecord r;
    r.region_id = std::move(id);
    r.total_towers = 10;
    r.coverage_pct = 90.0;
    for (int y = config.study_start_year; y <= config.study_end_year; ++y) {
        r.cellpen_by_year[y] = cellpen;
        r.sppen_by_year[y] = sppen;
    }
    r.arpu_low = 2.0;
    r.arpu_mid = 4.0;
    r.arpu_high = 6.0;
    r.spectrum_price_coverage = 0.3;
    r.spectrum_price_capacity = 0.05;
    r.backhaul_mix = {0.01, 0.03, 0.94, 0.02};
    return r;
}

bbtea::Country strip_country(int n, double peak, double step, const bbtea::ModelConfig& config) {
    bbtea::Country c;
    c.regions.push_back(region("R1", 0.6, 0.5, config));
    for (int i = 0; i < n; ++i) {
        c.areas.push_back(area("A" + std::to_string(100 + i), "R1", std::max(1.0, peak - step * i),
                               1.0, 2.0, i + 0.5, 0.5, config));
    }
    c.adjacency = bbtea::grid_adjacency(c.areas);
    return c;
}

FiberInstance random_fiber_instance(std::uint64_t seed, int max_per_region) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> coord(0.0, 20.0);
    std::uniform_real_distribution<double> pop(1000.0, 30000.0);
    std::uniform_int_distribution<int> count(1, max_per_region);
    std::bernoulli_distribution two_regions(0.5);

    FiberInstance inst;
    inst.region_ids.push_back("R1");
    if (two_regions(gen)) inst.region_ids.push_back("R2");

    // A horizontal core edge through the first region, with one settlement
    // on it large enough to be a core node.
    const double y = coord(gen);
    inst.core_edges.push_back({{0.0, y}, {20.0, y}});

    for (std::size_t r = 0; r < inst.region_ids.size(); ++r) {
        const int n = count(gen);
        const double x_offset = 100.0 * static_cast<double>(r);
        for (int i = 0; i < n; ++i) {
            bbtea::Settlement s;
            s.region_id = inst.region_ids[r];
            s.settlement_id = s.region_id + "-s" + std::to_string(i);
            s.population = pop(gen);
            s.position = bbtea::Point{x_offset + coord(gen), coord(gen)};
            if (r == 0 && i == 0) {
                s.population = 20000.0;
                s.position->y = y;
            }
            inst.settlements.push_back(s);
        }
    }
    return inst;
}

std::vector<double> expected_regional_km(const FiberInstance& inst) {
    const double threshold = bbtea::FiberParams{}.core_pop_threshold;
    const double buffer = bbtea::FiberParams{}.core_edge_buffer_km;
    auto existing_core = [&](const bbtea::Settlement& s) {
        if (s.population <= threshold) return false;
        for (const auto& e : inst.core_edges) {
            if (bbtea::distance_to_polyline(*s.position, e) <= buffer) return true;
        }
        return false;
    };

    std::vector<double> out;
    for (const auto& id : inst.region_ids) {
        std::vector<bbtea::Point> points;
        std::vector<char> roots;
        const bbtea::Settlement* largest = nullptr;
        std::size_t largest_index = 0;
        for (const auto& s : inst.settlements) {
            if (s.region_id != id) continue;
            if (!largest || s.population > largest->population) {
                largest = &s;
                largest_index = points.size();
            }
            points.push_back(*s.position);
            roots.push_back(existing_core(s) ? 1 : 0);
        }
        if (points.empty()) {
            out.push_back(0.0);
            continue;
        }
        if (std::find(roots.begin(), roots.end(), 1) == roots.end()) roots[largest_index] = 1;
        out.push_back(oracle::min_rooted_forest_km(points, std::vector<bool>(roots.begin(), roots.end())));
    }
    return out;
}

const bbtea::CapacityLookup& reference_lookup() {
    static const bbtea::CapacityLookup lookup = bbtea::build_capacity_lookup(bbtea::LookupSpec{});
    return lookup;
}

std::filesystem::path temp_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("bbtea_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace fixture
