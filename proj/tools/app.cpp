#include "app.hpp"

#include "bbtea/assessment.hpp"
#include "bbtea/capacity.hpp"
#include "bbtea/config.hpp"
#include "bbtea/cost.hpp"
#include "bbtea/country.hpp"
#include "bbtea/report.hpp"
#include "bbtea/synthetic.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace bbtea::app {

namespace {

constexpr const char* kVersion = "0.1.0";

struct Flags {
    std::optional<std::string> config;
    std::optional<std::string> areas_csv;
    std::optional<std::string> regions_csv;
    std::optional<std::string> adjacency_csv;
    std::optional<std::string> core_edges_csv;
    std::optional<std::string> unit_costs_csv;
    bool synthetic = false;
    std::optional<std::string> areas;
    std::optional<std::string> seed;
    std::optional<std::string> scenarios;
    std::optional<std::string> strategies;
    std::optional<std::string> scalars;
    std::optional<std::string> percentile;
    std::optional<std::string> out;
    std::optional<std::string> lookup_cache;
    std::optional<std::string> threads;
};

void add_common(CLI::App& cmd, Flags& f) {
    cmd.add_option("--config", f.config, "key=value settings file");
    cmd.add_option("--percentile", f.percentile, "SE percentile for the capacity lookup (0-100)");
    cmd.add_option("--seed", f.seed, "RNG seed for sampling and the synthetic country");
    cmd.add_option("--out", f.out, "output directory");
    cmd.add_option("--lookup-cache", f.lookup_cache, "capacity lookup CSV to reuse or create");
    cmd.add_option("--threads", f.threads, "worker threads");
}

/// Config file first, then flags on top.
Settings resolve(const Flags& f) {
    Settings s = f.config ? load_settings(*f.config) : Settings{};
    auto set = [&](std::string_view key, const std::optional<std::string>& v) {
        if (v) apply_setting(s, key, *v);
    };
    set("areas_csv", f.areas_csv);
    set("regions_csv", f.regions_csv);
    set("adjacency_csv", f.adjacency_csv);
    set("core_edges_csv", f.core_edges_csv);
    set("unit_costs_csv", f.unit_costs_csv);
    if (f.synthetic) s.run.synthetic = true;
    set("synthetic_areas", f.areas);
    set("rng_seed", f.seed);
    set("scenarios", f.scenarios);
    set("strategies", f.strategies);
    set("spectrum_scalars", f.scalars);
    set("confidence_percentile", f.percentile);
    set("out_dir", f.out);
    set("lookup_cache", f.lookup_cache);
    set("threads", f.threads);
    s.model.validate();
    if (s.run.threads < 1) throw ValidationError("invariant violated: threads >= 1");
    return s;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw RuntimeFailure(fmt::format("cannot write {}", path.string()));
    return out;
}

std::string write_text(const std::filesystem::path& path, const std::string& text) {
    auto out = open_out(path);
    out << text;
    if (!out) throw RuntimeFailure(fmt::format("failed writing {}", path.string()));
    return sha256_hex(text);
}

CapacityLookup obtain_lookup(const Settings& s, std::ostream& log, std::vector<ManifestEntry>& inputs) {
    const auto& cache = s.run.lookup_cache;
    if (!cache.empty() && std::filesystem::exists(cache)) {
        std::ifstream in(cache);
        auto lookup = read_lookup_csv(in);
        if (lookup.percentile() != s.model.confidence_percentile) {
            throw ValidationError(fmt::format(
                "lookup cache {} was built at percentile {}, run asks for {}", cache.string(),
                lookup.percentile(), s.model.confidence_percentile));
        }
        inputs.push_back({"lookup_cache", sha256_file(cache)});
        fmt::print(log, "capacity lookup: loaded {}\n", cache.string());
        return lookup;
    }
    const auto start = std::chrono::steady_clock::now();
    auto lookup = build_capacity_lookup(lookup_spec_from(s.model, s.run.threads));
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    fmt::print(log, "capacity lookup: built in {:.1f} s\n", took.count());
    if (!cache.empty()) {
        std::ostringstream text;
        write_lookup_csv(text, lookup);
        write_text(cache, text.str());
        fmt::print(log, "capacity lookup: cached to {}\n", cache.string());
    }
    return lookup;
}

Country obtain_country(const Settings& s, std::vector<ManifestEntry>& inputs) {
    if (s.run.synthetic) {
        SyntheticParams p;
        p.seed = s.model.rng_seed;
        p.n_areas = s.run.synthetic_areas;
        auto country = generate_synthetic_country(p, s.model);
        std::ostringstream areas;
        std::ostringstream regions;
        write_areas_csv(areas, country.areas);
        write_regions_csv(regions, country.regions);
        inputs.push_back({"synthetic_areas", sha256_hex(areas.str())});
        inputs.push_back({"synthetic_regions", sha256_hex(regions.str())});
        return country;
    }
    if (s.run.areas_csv.empty() || s.run.regions_csv.empty()) {
        throw ValidationError("need --areas-csv and --regions-csv, or --synthetic");
    }
    auto country = load_country_files(s.run, s.model);
    for (const auto& [name, path] :
         {std::pair{"areas_csv", s.run.areas_csv}, std::pair{"regions_csv", s.run.regions_csv},
          std::pair{"adjacency_csv", s.run.adjacency_csv},
          std::pair{"core_edges_csv", s.run.core_edges_csv}}) {
        if (!path.empty()) inputs.push_back({name, sha256_file(path)});
    }
    return country;
}

int cmd_run(const Flags& f, std::ostream& out) {
    const Settings s = resolve(f);
    std::vector<Scenario> scenarios;
    for (const auto& name : s.run.scenarios) scenarios.push_back(scenario_by_name(name));
    std::vector<Strategy> strategies;
    for (const auto& name : s.run.strategies) strategies.push_back(parse_strategy(name));
    if (scenarios.empty() || strategies.empty()) {
        throw ValidationError("need at least one scenario and one strategy");
    }

    Manifest manifest;
    manifest.tool_version = kVersion;
    manifest.settings = render_settings(s);
    if (f.config) manifest.inputs.push_back({"config", sha256_file(*f.config)});

    auto country = obtain_country(s, manifest.inputs);
    UnitCosts costs;
    if (!s.run.unit_costs_csv.empty()) {
        std::ifstream in(s.run.unit_costs_csv);
        if (!in) throw ValidationError(fmt::format("cannot open {}", s.run.unit_costs_csv.string()));
        costs = read_unit_costs_csv(in);
        manifest.inputs.push_back({"unit_costs_csv", sha256_file(s.run.unit_costs_csv)});
    }
    auto lookup = obtain_lookup(s, out, manifest.inputs);
    std::ostringstream lookup_text;
    write_lookup_csv(lookup_text, lookup);

    const auto start = std::chrono::steady_clock::now();
    const Assessment assessment(std::move(country), s.model, costs, lookup);
    const auto result =
        assessment.sweep(scenarios, strategies, s.run.spectrum_scalars, s.run.threads);
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    fmt::print(out, "assessment: {} areas, {} cells x {} scalars in {:.2f} s\n",
               assessment.country().areas.size(), scenarios.size() * strategies.size(),
               s.run.spectrum_scalars.size(), took.count());

    std::filesystem::create_directories(s.run.out_dir);
    std::ostringstream deciles;
    write_decile_csv(deciles, result.deciles);
    std::ostringstream sensitivity;
    write_sensitivity_csv(sensitivity, result.sensitivity);
    const auto& dir = s.run.out_dir;
    manifest.outputs.push_back({"decile_results.csv", write_text(dir / "decile_results.csv", deciles.str())});
    manifest.outputs.push_back({"sensitivity.csv", write_text(dir / "sensitivity.csv", sensitivity.str())});
    manifest.outputs.push_back({"capacity_lookup.csv", write_text(dir / "capacity_lookup.csv", lookup_text.str())});
    write_text(dir / "manifest.json", render_manifest(manifest));

    for (const auto& row : result.sensitivity) {
        if (row.spectrum_scalar == 1.0) {
            fmt::print(out, "{} {:<16} viable coverage {:>5.1f}%\n", row.scenario, row.strategy,
                       row.max_viable_coverage_pct);
        }
    }
    fmt::print(out, "wrote {}\n", dir.string());
    return kExitOk;
}

int cmd_lookup(const Flags& f, std::ostream& out) {
    Settings s = resolve(f);
    const auto start = std::chrono::steady_clock::now();
    const auto lookup = build_capacity_lookup(lookup_spec_from(s.model, s.run.threads));
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    std::ostringstream text;
    write_lookup_csv(text, lookup);
    std::filesystem::create_directories(s.run.out_dir);
    Manifest manifest;
    manifest.tool_version = kVersion;
    manifest.settings = render_settings(s);
    if (f.config) manifest.inputs.push_back({"config", sha256_file(*f.config)});
    manifest.outputs.push_back(
        {"capacity_lookup.csv", write_text(s.run.out_dir / "capacity_lookup.csv", text.str())});
    if (!s.run.lookup_cache.empty()) write_text(s.run.lookup_cache, text.str());
    write_text(s.run.out_dir / "manifest.json", render_manifest(manifest));
    fmt::print(out, "capacity lookup: {} curves built in {:.1f} s, wrote {}\n",
               lookup.curves().size(), took.count(), s.run.out_dir.string());
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Broadband techno-economic assessment", "bbtea"};
    app.require_subcommand(1);
    Flags run_flags;
    Flags lookup_flags;

    auto* run = app.add_subcommand("run", "dimension, cost and assess every scenario and strategy");
    add_common(*run, run_flags);
    run->add_option("--areas-csv", run_flags.areas_csv, "area table");
    run->add_option("--regions-csv", run_flags.regions_csv, "region table");
    run->add_option("--adjacency-csv", run_flags.adjacency_csv, "area adjacency pairs");
    run->add_option("--core-edges-csv", run_flags.core_edges_csv, "existing core fiber polylines");
    run->add_option("--unit-costs-csv", run_flags.unit_costs_csv, "unit cost overrides");
    run->add_flag("--synthetic", run_flags.synthetic, "generate a synthetic country");
    run->add_option("--areas", run_flags.areas, "synthetic area count");
    run->add_option("--scenarios", run_flags.scenarios, "comma list, e.g. S1,S2,S3");
    run->add_option("--strategies", run_flags.strategies, "comma list, e.g. 4G_wireless,5G_NSA_fiber");
    run->add_option("--spectrum-scalars", run_flags.scalars, "comma list of price scalars in [0,1]");

    auto* lookup = app.add_subcommand("lookup", "build and write the capacity lookup only");
    add_common(*lookup, lookup_flags);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitValidation;
    }

    try {
        if (run->parsed()) return cmd_run(run_flags, out);
        return cmd_lookup(lookup_flags, out);
    } catch (const ValidationError& e) {
        fmt::print(err, "validation error: {}\n", e.what());
        return kExitValidation;
    } catch (const RuntimeFailure& e) {
        fmt::print(err, "runtime failure: {}\n", e.what());
        return kExitRuntime;
    } catch (const std::exception& e) {
        fmt::print(err, "runtime failure: {}\n", e.what());
        return kExitRuntime;
    }
}

}  // namespace bbtea::app
