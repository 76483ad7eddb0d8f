#include "bbtea/report.hpp"

#include <fmt/format.h>
#include "json.hpp"
#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

namespace bbtea {

namespace {

std::string money(double v) {
    const double r = std::round(v * 100.0) / 100.0;
    return fmt::format("{:.2f}", r == 0.0 ? 0.0 : r);  // no "-0.00"
}

}  // namespace

void write_decile_csv(std::ostream& out, std::vector<DecileResult> rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const DecileResult& a, const DecileResult& b) {
        if (a.scenario != b.scenario) return a.scenario < b.scenario;
        if (a.strategy != b.strategy) return a.strategy < b.strategy;
        return a.decile < b.decile;
    });
    out << "scenario,strategy,decile,population,area_km2,new_sites,upgraded_sites,ran,backhaul,"
           "core,admin,spectrum,tax,profit,total_cost,revenue,cum_cost,cum_revenue,viable,"
           "subsidy,cost_per_user\n";
    for (const auto& r : rows) {
        const auto& c = r.cost;
        out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                           r.scenario, r.strategy, r.decile, r.population, r.area_km2, r.new_sites,
                           r.upgraded_sites, money(c.ran), money(c.backhaul), money(c.core),
                           money(c.admin), money(c.spectrum), money(c.tax), money(c.profit),
                           money(c.total), money(r.revenue_adjusted), money(r.cumulative_cost),
                           money(r.cumulative_revenue), r.viable ? "true" : "false",
                           money(r.subsidy_required), money(r.cost_per_user));
    }
}

void write_sensitivity_csv(std::ostream& out, const SensitivityGrid& grid) {
    auto rows = grid;
    std::stable_sort(rows.begin(), rows.end(), [](const SensitivityRow& a, const SensitivityRow& b) {
        if (a.scenario != b.scenario) return a.scenario < b.scenario;
        return a.strategy < b.strategy;
    });
    out << "scenario,strategy,spectrum_scalar,max_viable_coverage_pct\n";
    for (const auto& r : rows) {
        out << fmt::format("{},{},{},{}\n", r.scenario, r.strategy, r.spectrum_scalar,
                           r.max_viable_coverage_pct);
    }
}

std::string sha256_hex(std::string_view bytes) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
        throw RuntimeFailure("sha256 computation failed");
    }
    std::string hex;
    hex.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
    return hex;
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError(fmt::format("cannot open {}", path.string()));
    std::ostringstream buf;
    buf << in.rdbuf();
    return sha256_hex(buf.str());
}

std::string render_manifest(const Manifest& m) {
    auto entries = [](const std::vector<ManifestEntry>& list) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& e : list) arr.push_back({{"name", e.name}, {"sha256", e.sha256}});
        return arr;
    };
    nlohmann::ordered_json j;
    j["tool"] = "bbtea";
    j["version"] = m.tool_version;
    j["settings_sha256"] = sha256_hex(m.settings);
    j["settings"] = m.settings;
    j["inputs"] = entries(m.inputs);
    j["outputs"] = entries(m.outputs);
    return j.dump(2) + "\n";
}

}  // namespace bbtea
