#ifndef BBTEA_REPORT_HPP
#define BBTEA_REPORT_HPP

#include "bbtea/assessment.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace bbtea {

/// Rows are stable-sorted by (scenario, strategy, decile) before writing.
/// Money is rounded to cents; other numbers keep full precision.
void write_decile_csv(std::ostream& out, std::vector<DecileResult> rows);
void write_sensitivity_csv(std::ostream& out, const SensitivityGrid& grid);

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

struct ManifestEntry {
    std::string name;
    std::string sha256;
};

struct Manifest {
    std::string tool_version;
    std::string settings;  // canonical key=value text
    std::vector<ManifestEntry> inputs;
    std::vector<ManifestEntry> outputs;
};

/// Pretty-printed JSON with keys in fixed order; no timestamps.
std::string render_manifest(const Manifest& manifest);

}  // namespace bbtea

#endif  // BBTEA_REPORT_HPP
