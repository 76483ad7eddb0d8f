#ifndef BBTEA_TESTS_FIXTURES_HPP
#define BBTEA_TESTS_FIXTURES_HPP

#include "bbtea/capacity.hpp"
#include "bbtea/config.hpp"
#include "bbtea/country.hpp"
#include "bbtea/supply.hpp"

#include <cstdint>
#include <filesystem>
#include <string>

namespace fixture {

bbtea::LocalArea area(std::string id, std::string region, double population, double km2 = 1.0,
                      double dn = 2.0, double x = 0.0, double y = 0.0,
                      const bbtea::ModelConfig& config = {});

/// Region with flat penetration over the config's study years.
bbtea::RegionRecord region(std::string id, double cellpen = 0.6, double sppen = 0.5,
                           const bbtea::ModelConfig& config = {});

/// A line of `n` unit cells in one region with densities falling from
/// `peak` by `step` per cell.
bbtea::Country strip_country(int n, double peak, double step, const bbtea::ModelConfig& config = {});

/// Random fiber design input: one or two regions of up to
/// `max_per_region` settlements, with a core edge crossing the first region.
struct FiberInstance {
    std::vector<bbtea::Settlement> settlements;
    std::vector<bbtea::Polyline> core_edges;
    std::vector<std::string> region_ids;
};

FiberInstance random_fiber_instance(std::uint64_t seed, int max_per_region = 7);

/// Regional fiber km per region by exhaustive spanning-tree enumeration,
/// with core nodes found independently of the library.
std::vector<double> expected_regional_km(const FiberInstance& instance);

/// Lookup with the default grid, samples and seed, built once per process.
const bbtea::CapacityLookup& reference_lookup();

/// Fresh empty directory under the system temp dir.
std::filesystem::path temp_dir(const std::string& name);

std::string read_file(const std::filesystem::path& path);

}  // namespace fixture

#endif  // BBTEA_TESTS_FIXTURES_HPP
