#include "bbtea/config.hpp"

#include "text.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace bbtea {

namespace {

void require(bool ok, std::string_view invariant) {
    if (!ok) throw ValidationError("invariant violated: " + std::string(invariant));
}

bool parse_bool(std::string_view v, std::string_view key) {
    v = detail::trim(v);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ValidationError(std::string(key) + ": expected a boolean, got '" + std::string(v) +
                          "'");
}

struct Key {
    std::function<void(Settings&, std::string_view)> set;
    std::function<std::string(const Settings&)> get;
};

template <typename T>
Key number_key(T ModelConfig::*field, std::string_view name) {
    const std::string key(name);
    return Key{
        [field, key](Settings& s, std::string_view v) {
            if constexpr (std::is_floating_point_v<T>) {
                s.model.*field = detail::parse_double(v, key);
            } else {
                s.model.*field = detail::parse_int<T>(v, key);
            }
        },
        [field](const Settings& s) { return fmt::format("{}", s.model.*field); }};
}

Key path_key(std::filesystem::path RunOptions::*field) {
    return Key{[field](Settings& s, std::string_view v) {
                   s.run.*field = std::filesystem::path(std::string(detail::trim(v)));
               },
               [field](const Settings& s) { return (s.run.*field).generic_string(); }};
}

const std::map<std::string, Key, std::less<>>& registry() {
    static const std::map<std::string, Key, std::less<>> keys = [] {
        std::map<std::string, Key, std::less<>> k;
        k.emplace("study_start_year", number_key(&ModelConfig::study_start_year, "study_start_year"));
        k.emplace("study_end_year", number_key(&ModelConfig::study_end_year, "study_end_year"));
        k.emplace("discount_rate", number_key(&ModelConfig::discount_rate, "discount_rate"));
        k.emplace("wacc", number_key(&ModelConfig::wacc, "wacc"));
        k.emplace("admin_pct", number_key(&ModelConfig::admin_pct, "admin_pct"));
        k.emplace("tax_rate_pct", number_key(&ModelConfig::tax_rate_pct, "tax_rate_pct"));
        k.emplace("profit_margin_pct",
                  number_key(&ModelConfig::profit_margin_pct, "profit_margin_pct"));
        k.emplace("excess_profit_threshold_pct",
                  number_key(&ModelConfig::excess_profit_threshold_pct,
                             "excess_profit_threshold_pct"));
        k.emplace("overbooking_factor",
                  number_key(&ModelConfig::overbooking_factor, "overbooking_factor"));
        k.emplace("networks", number_key(&ModelConfig::networks, "networks"));
        k.emplace("traffic_load_pct", number_key(&ModelConfig::traffic_load_pct, "traffic_load_pct"));
        k.emplace("confidence_percentile",
                  number_key(&ModelConfig::confidence_percentile, "confidence_percentile"));
        k.emplace("rng_seed", number_key(&ModelConfig::rng_seed, "rng_seed"));
        k.emplace("urban_density_threshold",
                  number_key(&ModelConfig::urban_density_threshold, "urban_density_threshold"));
        k.emplace("suburban_density_threshold",
                  number_key(&ModelConfig::suburban_density_threshold,
                             "suburban_density_threshold"));
        k.emplace("cell_threshold", number_key(&ModelConfig::cell_threshold, "cell_threshold"));
        k.emplace("settlement_threshold",
                  number_key(&ModelConfig::settlement_threshold, "settlement_threshold"));
        k.emplace("core_pop_threshold",
                  number_key(&ModelConfig::core_pop_threshold, "core_pop_threshold"));
        k.emplace("core_edge_buffer_km",
                  number_key(&ModelConfig::core_edge_buffer_km, "core_edge_buffer_km"));
        k.emplace("existing_share_4g",
                  number_key(&ModelConfig::existing_share_4g, "existing_share_4g"));
        k.emplace("existing_share_3g",
                  number_key(&ModelConfig::existing_share_3g, "existing_share_3g"));
        k.emplace("existing_share_2g",
                  number_key(&ModelConfig::existing_share_2g, "existing_share_2g"));
        k.emplace("isd_min_km", number_key(&ModelConfig::isd_min_km, "isd_min_km"));
        k.emplace("isd_max_km", number_key(&ModelConfig::isd_max_km, "isd_max_km"));
        k.emplace("isd_points", number_key(&ModelConfig::isd_points, "isd_points"));
        k.emplace("samples_per_isd", number_key(&ModelConfig::samples_per_isd, "samples_per_isd"));
        k.emplace("tax_base",
                  Key{[](Settings& s, std::string_view v) {
                          v = detail::trim(v);
                          if (v == "network") {
                              s.model.tax_base = TaxBase::Network;
                          } else if (v == "profit") {
                              s.model.tax_base = TaxBase::Profit;
                          } else {
                              throw ValidationError("tax_base: expected network or profit, got '" +
                                                    std::string(v) + "'");
                          }
                      },
                      [](const Settings& s) {
                          return std::string(s.model.tax_base == TaxBase::Network ? "network"
                                                                                  : "profit");
                      }});

        k.emplace("areas_csv", path_key(&RunOptions::areas_csv));
        k.emplace("regions_csv", path_key(&RunOptions::regions_csv));
        k.emplace("adjacency_csv", path_key(&RunOptions::adjacency_csv));
        k.emplace("core_edges_csv", path_key(&RunOptions::core_edges_csv));
        k.emplace("unit_costs_csv", path_key(&RunOptions::unit_costs_csv));
        k.emplace("out_dir", path_key(&RunOptions::out_dir));
        k.emplace("lookup_cache", path_key(&RunOptions::lookup_cache));
        k.emplace("synthetic", Key{[](Settings& s, std::string_view v) {
                                       s.run.synthetic = parse_bool(v, "synthetic");
                                   },
                                   [](const Settings& s) {
                                       return std::string(s.run.synthetic ? "true" : "false");
                                   }});
        k.emplace("synthetic_areas",
                  Key{[](Settings& s, std::string_view v) {
                          s.run.synthetic_areas = detail::parse_int<int>(v, "synthetic_areas");
                      },
                      [](const Settings& s) { return fmt::format("{}", s.run.synthetic_areas); }});
        k.emplace("threads", Key{[](Settings& s, std::string_view v) {
                                     s.run.threads = detail::parse_int<int>(v, "threads");
                                 },
                                 [](const Settings& s) { return fmt::format("{}", s.run.threads); }});
        k.emplace("scenarios",
                  Key{[](Settings& s, std::string_view v) { s.run.scenarios = parse_string_list(v); },
                      [](const Settings& s) { return fmt::format("{}", fmt::join(s.run.scenarios, ",")); }});
        k.emplace("strategies",
                  Key{[](Settings& s, std::string_view v) { s.run.strategies = parse_string_list(v); },
                      [](const Settings& s) { return fmt::format("{}", fmt::join(s.run.strategies, ",")); }});
        k.emplace("spectrum_scalars",
                  Key{[](Settings& s, std::string_view v) {
                          s.run.spectrum_scalars = parse_double_list(v);
                      },
                      [](const Settings& s) {
                          return fmt::format("{}", fmt::join(s.run.spectrum_scalars, ","));
                      }});
        return k;
    }();
    return keys;
}

}  // namespace

void ModelConfig::validate() const {
    require(study_end_year > study_start_year, "study_end_year > study_start_year");
    require(discount_rate >= 0.0 && discount_rate < 1.0, "discount_rate in [0, 1)");
    require(wacc >= 0.0 && wacc < 1.0, "wacc in [0, 1)");
    require(admin_pct >= 0.0, "admin_pct >= 0");
    require(tax_rate_pct >= 0.0, "tax_rate_pct >= 0");
    require(profit_margin_pct >= 0.0, "profit_margin_pct >= 0");
    require(excess_profit_threshold_pct >= 0.0, "excess_profit_threshold_pct >= 0");
    require(overbooking_factor >= 1.0, "overbooking_factor >= 1");
    require(networks >= 1, "networks >= 1");
    require(traffic_load_pct > 0.0 && traffic_load_pct <= 100.0, "traffic_load_pct in (0, 100]");
    require(confidence_percentile > 0.0 && confidence_percentile < 100.0,
            "confidence_percentile in (0, 100)");
    require(urban_density_threshold > suburban_density_threshold,
            "urban_density_threshold > suburban_density_threshold");
    require(suburban_density_threshold >= 0.0, "suburban_density_threshold >= 0");
    require(cell_threshold >= 0.0 && settlement_threshold >= 0.0 && core_pop_threshold >= 0.0,
            "settlement thresholds >= 0");
    require(core_edge_buffer_km >= 0.0, "core_edge_buffer_km >= 0");
    require(existing_share_4g >= 0.0 && existing_share_3g >= 0.0 && existing_share_2g >= 0.0,
            "existing generation shares >= 0");
    require(std::abs(existing_share_4g + existing_share_3g + existing_share_2g - 1.0) <= 1e-9,
            "existing generation shares sum to 1");
    require(isd_min_km > 0.0 && isd_max_km > isd_min_km, "0 < isd_min_km < isd_max_km");
    require(isd_points >= 2, "isd_points >= 2");
    require(samples_per_isd >= 100, "samples_per_isd >= 100");
}

double Scenario::target(Geotype g) const {
    switch (g) {
        case Geotype::Urban: return target_mbps_urban;
        case Geotype::Suburban: return target_mbps_suburban;
        case Geotype::Rural: return target_mbps_rural;
    }
    return 0.0;
}

void Scenario::validate() const {
    require(target_mbps_urban > 0.0 && target_mbps_suburban > 0.0 && target_mbps_rural > 0.0,
            "scenario targets > 0");
    require(target_mbps_urban >= target_mbps_suburban &&
                target_mbps_suburban >= target_mbps_rural,
            "scenario targets urban >= suburban >= rural");
}

double SpectrumBand::effective_bandwidth_mhz() const {
    return duplex == Duplex::Tdd ? bandwidth_mhz * tdd_dl_fraction : bandwidth_mhz;
}

void SpectrumBand::validate() const {
    require(frequency_mhz >= 500.0 && frequency_mhz <= 100000.0,
            "band frequency in [500, 100000] MHz");
    require(bandwidth_mhz > 0.0, "band bandwidth > 0");
    if (duplex == Duplex::Tdd) {
        require(tdd_dl_fraction > 0.0 && tdd_dl_fraction <= 1.0, "tdd_dl_fraction in (0, 1]");
    }
}

std::string Strategy::name() const {
    return fmt::format("{}_{}", to_string(generation), to_string(backhaul));
}

void Strategy::validate() const {
    require((mimo == Mimo::X2) == (generation == Generation::G4),
            "mimo is 2x2 iff generation is 4G");
    require(!bands.empty(), "strategy has at least one band");
    for (const auto& b : bands) {
        b.validate();
        require(b.generation == generation, "strategy bands belong to its generation");
    }
}

std::vector<SpectrumBand> default_bands() {
    return {
        {850.0, 2.5, Duplex::Fdd, 0.8, Generation::G4},
        {1800.0, 2.5, Duplex::Fdd, 0.8, Generation::G4},
        {2300.0, 15.0, Duplex::Fdd, 0.8, Generation::G4},
        {700.0, 5.0, Duplex::Fdd, 0.8, Generation::G5Nsa},
        {3500.0, 50.0, Duplex::Tdd, 0.8, Generation::G5Nsa},
    };
}

std::vector<SpectrumBand> bands_for(Generation g, const std::vector<SpectrumBand>& all) {
    std::vector<SpectrumBand> out;
    std::copy_if(all.begin(), all.end(), std::back_inserter(out),
                 [g](const SpectrumBand& b) { return b.generation == g; });
    return out;
}

Strategy make_strategy(Generation g, BackhaulFamily b, const std::vector<SpectrumBand>& all) {
    Strategy s;
    s.generation = g;
    s.backhaul = b;
    s.bands = bands_for(g, all);
    s.mimo = g == Generation::G4 ? Mimo::X2 : Mimo::X4;
    return s;
}

Strategy parse_strategy(std::string_view name, const std::vector<SpectrumBand>& all) {
    const auto sep = name.rfind('_');
    if (sep == std::string_view::npos) {
        throw ValidationError("unknown strategy '" + std::string(name) + "'");
    }
    const auto gen = parse_generation(name.substr(0, sep));
    const auto bh = name.substr(sep + 1);
    if (bh == "wireless") return make_strategy(gen, BackhaulFamily::Wireless, all);
    if (bh == "fiber") return make_strategy(gen, BackhaulFamily::Fiber, all);
    throw ValidationError("unknown strategy '" + std::string(name) + "'");
}

std::vector<Strategy> default_strategies() {
    return {make_strategy(Generation::G4, BackhaulFamily::Wireless),
            make_strategy(Generation::G4, BackhaulFamily::Fiber),
            make_strategy(Generation::G5Nsa, BackhaulFamily::Wireless),
            make_strategy(Generation::G5Nsa, BackhaulFamily::Fiber)};
}

std::vector<Scenario> default_scenarios() {
    return {{"S1", 25.0, 10.0, 2.0}, {"S2", 50.0, 20.0, 5.0}, {"S3", 100.0, 30.0, 10.0}};
}

Scenario scenario_by_name(std::string_view name) {
    for (auto& s : default_scenarios()) {
        if (s.name == name) return s;
    }
    throw ValidationError("unknown scenario '" + std::string(name) + "'");
}

void apply_setting(Settings& settings, std::string_view key, std::string_view value) {
    const auto& keys = registry();
    const auto it = keys.find(detail::trim(key));
    if (it == keys.end()) {
        throw ValidationError("unknown config key '" + std::string(detail::trim(key)) + "'");
    }
    it->second.set(settings, value);
}

Settings parse_settings(std::string_view text) {
    Settings settings;
    int line_no = 0;
    for (auto line : detail::split(text, '\n')) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ValidationError(fmt::format("config line {}: expected key=value", line_no));
        }
        try {
            apply_setting(settings, line.substr(0, eq), line.substr(eq + 1));
        } catch (const ValidationError& e) {
            throw ValidationError(fmt::format("config line {}: {}", line_no, e.what()));
        }
    }
    return settings;
}

Settings load_settings(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_settings(buf.str());
}

std::string render_settings(const Settings& settings) {
    std::string out;
    for (const auto& [key, k] : registry()) {
        out += key;
        out += '=';
        out += k.get(settings);
        out += '\n';
    }
    return out;
}

std::vector<double> parse_double_list(std::string_view text) {
    std::vector<double> out;
    if (detail::trim(text).empty()) return out;
    for (auto part : detail::split(text, ',')) out.push_back(detail::parse_double(part, "list"));
    return out;
}

std::vector<std::string> parse_string_list(std::string_view text) {
    std::vector<std::string> out;
    if (detail::trim(text).empty()) return out;
    for (auto part : detail::split(text, ',')) out.emplace_back(detail::trim(part));
    return out;
}

}  // namespace bbtea
