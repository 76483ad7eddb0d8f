// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.

#include "app.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include "bbtea/assessment.hpp"
#include "bbtea/capacity.hpp"
#include "bbtea/cost.hpp"
#include "bbtea/fiber.hpp"
#include "bbtea/radio.hpp"
#include "bbtea/supply.hpp"
#include "bbtea/synthetic.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

using namespace bbtea;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

int failures = 0;

void report(int id, const std::string& name, const Outcome& o) {
    fmt::print("{} criterion {}: {} ({})\n", o.pass ? "PASS" : "FAIL", id, name, o.detail);
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

int cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = app::run_cli(args, out, err);
    if (code != 0) fmt::print(stderr, "bbtea {} failed: {}\n", args.front(), err.str());
    return code;
}

Outcome table_one() {
    struct Row {
        int cqi;
        double sinr, se4, se5;
    };
    const std::array<Row, 15> expected{{
        {1, -6.7, 0.3, 0.15},   {2, -4.7, 0.46, 1.02},  {3, -2.3, 0.74, 2.21},
        {4, 0.2, 1.2, 3.2},     {5, 2.4, 1.6, 4.0},     {6, 4.3, 2.2, 5.41},
        {7, 5.9, 2.8, 6.2},     {8, 8.1, 3.8, 8.0},     {9, 10.3, 4.8, 9.5},
        {10, 11.7, 5.4, 11.0},  {11, 14.1, 6.6, 14.0},  {12, 16.3, 7.8, 16.0},
        {13, 18.7, 9.0, 19.0},  {14, 21.0, 10.2, 22.0}, {15, 22.7, 11.4, 25.0},
    }};
    const auto start = Clock::now();
    Outcome o;
    const auto& table = se_lookup_table();
    for (std::size_t i = 0; i < expected.size(); ++i) {
        const auto& e = expected[i];
        if (table[i].cqi != e.cqi || table[i].sinr_db != e.sinr ||
            se_from_sinr(e.sinr, Generation::G4) != e.se4 ||
            se_from_sinr(e.sinr, Generation::G5Nsa) != e.se5) {
            o.fail(fmt::format("CQI {} mismatch", e.cqi));
        }
    }
    const double took = seconds_since(start);
    if (took >= 1.0) o.fail(fmt::format("took {:.3f} s", took));
    if (o.pass) o.detail = fmt::format("15 rows exact in {:.6f} s", took);
    return o;
}

Outcome table_two() {
    const std::vector<std::pair<std::string, double>> expected{
        {"sector_antenna", 1500},         {"remote_radio_unit", 3500},
        {"io_fronthaul", 1500},           {"processing", 1500},
        {"io_s1_x2", 1500},               {"control_unit", 2000},
        {"cooling_fans", 250},            {"power_supply", 250},
        {"battery_system", 10000},        {"bbu_cabinet", 200},
        {"tower", 5000},                  {"civil_materials", 5000},
        {"transportation", 5000},         {"installation", 5000},
        {"site_rental_urban", 15000},     {"site_rental_suburban", 5000},
        {"site_rental_rural", 1000},      {"router", 2000},
        {"wireless_link_small", 20000},   {"wireless_link_medium", 30000},
        {"wireless_link_large", 60000},   {"fiber_urban_per_m", 20},
        {"fiber_suburban_per_m", 10},     {"fiber_rural_per_m", 5},
        {"regional_fiber_link_per_m", 2}, {"regional_fiber_node", 100000},
        {"core_fiber_link_per_m", 4},     {"core_fiber_node", 50000}};
    Outcome o;
    const UnitCosts uc;
    const auto& fields = unit_cost_fields();
    if (fields.size() != expected.size()) {
        o.fail(fmt::format("{} fields, expected {}", fields.size(), expected.size()));
    }
    for (std::size_t i = 0; i < std::min(fields.size(), expected.size()); ++i) {
        if (fields[i].first != expected[i].first || uc.*(fields[i].second) != expected[i].second) {
            o.fail(fmt::format("row {} ({}) mismatch", i + 1, expected[i].first));
        }
    }
    const double subtotal = site_equipment_cost(uc);
    if (std::abs(subtotal - 32000.0) > 0.10 * 32000.0) {
        o.fail(fmt::format("equipment subtotal {} outside 32000 +/- 10%", subtotal));
    }
    if (o.pass) {
        o.detail = fmt::format("{} rows exact; equipment subtotal {} vs 32000 ({:+.1f}%)",
                               fields.size(), subtotal, 100.0 * (subtotal / 32000.0 - 1.0));
    }
    return o;
}

Outcome noise_check() {
    Outcome o;
    const double a = noise_dbm(10e6, 1.5);
    const double b = noise_dbm(1.0, 0.0);
    if (std::abs(a - -102.48) > 0.01) o.fail(fmt::format("10 MHz NF 1.5 gave {:.4f}", a));
    if (std::abs(b - -173.98) > 0.01) o.fail(fmt::format("1 Hz NF 0 gave {:.4f}", b));
    if (o.pass) o.detail = fmt::format("{:.4f} dBm, {:.4f} dBm", a, b);
    return o;
}

Outcome mst_oracle() {
    Outcome o;
    const auto start = Clock::now();
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto inst = fixture::random_fiber_instance(seed, 7);
        const auto net = design_fiber(inst.settlements, inst.core_edges, inst.region_ids, {});
        const auto expected = fixture::expected_regional_km(inst);
        for (std::size_t r = 0; r < inst.region_ids.size(); ++r) {
            ++checked;
            const double got = net.regions[r].regional_km;
            if (std::abs(got - expected[r]) > 1e-9 * (1.0 + expected[r])) {
                o.fail(fmt::format("seed {} region {}: {} vs exhaustive {}", seed,
                                   inst.region_ids[r], got, expected[r]));
            }
        }
    }
    const double took = seconds_since(start);
    if (took >= 10.0) o.fail(fmt::format("took {:.2f} s", took));
    if (o.pass) {
        o.detail = fmt::format("200 instances, {} regions matched in {:.2f} s", checked, took);
    }
    return o;
}

Outcome conservation(const Country& country, const ModelConfig& config) {
    Outcome o;
    const auto portfolios = build_site_portfolios(country, config);
    std::int64_t placed = 0;
    for (const auto& p : portfolios) placed += p.existing_sites;
    std::int64_t national = 0;
    for (const auto& r : country.regions) national += r.total_towers;
    const auto regions = static_cast<std::int64_t>(country.regions.size());
    if (std::llabs(placed - national) > regions) {
        o.fail(fmt::format("towers {} vs national {}", placed, national));
    }

    const auto deciles = assign_deciles(country.areas);
    std::vector<double> pops;
    for (const auto& a : country.areas) pops.push_back(a.population);
    const auto by_decile = oracle::decile_populations(pops, deciles);
    double decile_sum = 0.0;
    for (double p : by_decile) decile_sum += p;
    const double total = std::accumulate(pops.begin(), pops.end(), 0.0);
    if (decile_sum != total) o.fail(fmt::format("decile populations {} vs {}", decile_sum, total));

    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> money(0.0, 1e7), thr(0.0, 50.0);
    double worst = 0.0;
    for (int run = 0; run < 100; ++run) {
        std::vector<double> cost(10), revenue(10);
        for (auto& c : cost) c = money(gen);
        for (auto& r : revenue) r = money(gen);
        const auto cs = cross_subsidize(cost, revenue, thr(gen));
        double shortfall = 0.0;
        for (std::size_t i = 0; i < 10; ++i) shortfall += std::max(0.0, cost[i] - revenue[i]);
        const double subsidy = std::accumulate(cs.subsidy.begin(), cs.subsidy.end(), 0.0);
        const double donated = std::accumulate(cs.donated.begin(), cs.donated.end(), 0.0);
        const double received = std::accumulate(cs.received.begin(), cs.received.end(), 0.0);
        const double rev_in = std::accumulate(revenue.begin(), revenue.end(), 0.0);
        const double rev_out =
            std::accumulate(cs.adjusted_revenue.begin(), cs.adjusted_revenue.end(), 0.0);
        auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
        worst = std::max({worst, rel(subsidy + cs.applied, shortfall), rel(donated, cs.applied),
                          rel(received, cs.applied), rel(rev_out, rev_in)});
    }
    if (worst > 1e-6) o.fail(fmt::format("cross-subsidy identity off by {:.3g} relative", worst));
    if (o.pass) {
        o.detail = fmt::format("towers {} vs {} ({} regions); deciles sum {}; cross-subsidy worst "
                               "relative error {:.2g}",
                               placed, national, regions, total, worst);
    }
    return o;
}

std::map<std::pair<std::string, std::string>, std::vector<const DecileResult*>> group(
    const std::vector<DecileResult>& rows) {
    std::map<std::pair<std::string, std::string>, std::vector<const DecileResult*>> out;
    for (const auto& r : rows) out[{r.scenario, r.strategy}].push_back(&r);
    for (auto& [key, v] : out) {
        std::sort(v.begin(), v.end(),
                  [](const DecileResult* a, const DecileResult* b) { return a->decile < b->decile; });
    }
    return out;
}

Outcome monotonicity(const SweepResult& sweep) {
    Outcome o;
    std::vector<std::string> notes;
    const auto cells = group(sweep.deciles);

    std::vector<std::string> fa;
    for (const auto& [key, d] : cells) {
        for (std::size_t i = 1; i < d.size(); ++i) {
            if (d[i]->cumulative_cost < d[i - 1]->cumulative_cost ||
                d[i]->cumulative_revenue < d[i - 1]->cumulative_revenue) {
                fa.push_back(fmt::format("{} {} d{}", key.first, key.second, d[i]->decile));
            }
        }
    }

    std::vector<std::string> fb;
    std::map<std::string, std::map<std::string, double>> total;
    for (const auto& [key, d] : cells) {
        for (const auto* r : d) total[key.second][key.first] += r->cost.total;
    }
    for (const auto& [strategy, by] : total) {
        if (!(by.at("S3") >= by.at("S2") && by.at("S2") >= by.at("S1"))) {
            fb.push_back(fmt::format("{} {:.3g}/{:.3g}/{:.3g}", strategy, by.at("S1"),
                                     by.at("S2"), by.at("S3")));
        }
    }

    std::vector<std::string> fc;
    std::map<std::pair<std::string, std::string>, std::vector<std::pair<double, double>>> sens;
    for (const auto& r : sweep.sensitivity) {
        sens[{r.scenario, r.strategy}].push_back({r.spectrum_scalar, r.max_viable_coverage_pct});
    }
    for (auto& [key, v] : sens) {
        std::sort(v.begin(), v.end());
        for (std::size_t i = 1; i < v.size(); ++i) {
            if (v[i].second > v[i - 1].second) {
                fc.push_back(fmt::format("{} {} scalar {} -> {}", key.first, key.second,
                                         v[i - 1].first, v[i].first));
            }
        }
    }

    std::vector<std::string> fd;
    for (const auto& [key, d] : cells) {
        if (d.back()->cost_per_user < d.front()->cost_per_user) {
            fd.push_back(fmt::format("{} {} d1 {:.0f} > d10 {:.0f}", key.first, key.second,
                                     d.front()->cost_per_user, d.back()->cost_per_user));
        }
    }

    std::vector<std::string> fe;
    for (const std::string scenario : {"S1", "S2", "S3"}) {
        const auto& g5 = cells.at({scenario, "5G_NSA_wireless"});
        const auto& g4 = cells.at({scenario, "4G_wireless"});
        for (int dec = 8; dec <= 10; ++dec) {
            const double a = g5[dec - 1]->cost_per_user;
            const double b = g4[dec - 1]->cost_per_user;
            if (a > b) fe.push_back(fmt::format("{} d{} 5G {:.0f} > 4G {:.0f}", scenario, dec, a, b));
        }
    }

    auto part = [&](const char* tag, const std::vector<std::string>& bad) {
        if (bad.empty()) {
            notes.push_back(fmt::format("{} ok", tag));
            return;
        }
        std::string list;
        for (std::size_t i = 0; i < std::min<std::size_t>(bad.size(), 3); ++i) {
            list += (i ? "; " : "") + bad[i];
        }
        o.fail("");
        notes.push_back(fmt::format("{} FAIL x{} [{}]", tag, bad.size(), list));
    };
    part("6a", fa);
    part("6b", fb);
    part("6c", fc);
    part("6d", fd);
    part("6e", fe);
    o.detail.clear();
    for (std::size_t i = 0; i < notes.size(); ++i) o.detail += (i ? ", " : "") + notes[i];
    return o;
}

Outcome radio_trend(const LookupSpec& spec) {
    Outcome o;
    int series = 0;
    std::vector<std::string> bad;
    for (const auto& band : spec.bands) {
        for (Geotype geo : {Geotype::Urban, Geotype::Suburban, Geotype::Rural}) {
            ++series;
            double prev = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < spec.isd_grid_km.size(); ++i) {
                const auto s = sample_links(band, geo, spec.isd_grid_km[i], 1000,
                                            SamplingKey{spec.seed, i}, spec.params);
                const double median = percentile_of(s.sinr_db, 50.0);
                if (median > prev) {
                    bad.push_back(fmt::format("{} MHz {} at {:.2f} km: {:.2f} > {:.2f} dB",
                                              band.frequency_mhz, to_string(geo),
                                              spec.isd_grid_km[i], median, prev));
                    break;
                }
                prev = median;
            }
        }
    }
    if (!bad.empty()) {
        o.fail(fmt::format("{} of {} series rise, first: {}", bad.size(), series, bad.front()));
    } else {
        o.detail = fmt::format("{} band/geotype series non-increasing", series);
    }
    return o;
}

Outcome determinism(const fs::path& root, const fs::path& cache) {
    Outcome o;
    auto run = [&](const std::string& name, const std::string& threads) {
        return cli({"run", "--synthetic", "--seed", "1", "--areas", "10000", "--threads", threads,
                    "--lookup-cache", cache.string(), "--out", (root / name).string()});
    };
    if (run("t1a", "1") != 0 || run("t1b", "1") != 0 || run("t8", "8") != 0) {
        o.fail("a run failed");
        return o;
    }
    for (const char* f : {"decile_results.csv", "sensitivity.csv", "capacity_lookup.csv"}) {
        const auto ref = fixture::read_file(root / "t1a" / f);
        if (ref != fixture::read_file(root / "t1b" / f)) o.fail(fmt::format("{} differs on repeat", f));
        if (ref != fixture::read_file(root / "t8" / f)) o.fail(fmt::format("{} differs at 8 threads", f));
    }
    // A cold lookup build must match the cached one at any thread count.
    if (cli({"lookup", "--threads", "8", "--out", (root / "lk8").string()}) != 0) {
        o.fail("lookup --threads 8 failed");
    } else if (fixture::read_file(root / "lk8" / "capacity_lookup.csv") !=
               fixture::read_file(cache)) {
        o.fail("capacity_lookup.csv differs at 8 threads");
    }
    if (o.pass) o.detail = "decile, sensitivity and lookup CSVs identical across repeats and 1/8 threads";
    return o;
}

}  // namespace

int main() {
    const auto root = fixture::temp_dir("bbtea_acceptance");
    const auto cache = root / "lookup_cache.csv";

    report(1, "CQI table fidelity", table_one());
    report(2, "unit cost table fidelity", table_two());
    report(3, "thermal noise", noise_check());
    report(4, "fiber MST vs exhaustive oracle", mst_oracle());

    ModelConfig config;
    SyntheticParams params;
    params.seed = 1;
    params.n_areas = 10000;
    const Country country = generate_synthetic_country(params, config);
    report(5, "conservation", conservation(country, config));

    // Lookup build through the CLI: produces the cache every later step uses.
    auto start = Clock::now();
    const int lookup_code = cli({"lookup", "--lookup-cache", cache.string(), "--out",
                                 (root / "lookup").string()});
    const double lookup_s = seconds_since(start);

    std::ifstream cache_in(cache);
    const CapacityLookup lookup = read_lookup_csv(cache_in);
    const Assessment assessment(country, config, UnitCosts{}, lookup);
    const RunOptions options;
    std::vector<Strategy> strategies;
    for (const auto& name : options.strategies) strategies.push_back(parse_strategy(name));
    std::vector<Scenario> scenarios;
    for (const auto& name : options.scenarios) scenarios.push_back(scenario_by_name(name));
    const auto sweep = assessment.sweep(scenarios, strategies, options.spectrum_scalars, 1);
    report(6, "monotonicity on synthetic country (seed 1, 10000 areas)", monotonicity(sweep));

    report(7, "median SINR non-increasing over ISD", radio_trend(lookup_spec_from(config, 1)));
    report(8, "determinism", determinism(root, cache));

    Outcome perf;
    start = Clock::now();
    const int run_code = cli({"run", "--synthetic", "--seed", "1", "--areas", "10000",
                              "--lookup-cache", cache.string(), "--out", (root / "perf").string()});
    const double sweep_s = seconds_since(start);
    if (lookup_code != 0 || run_code != 0) perf.fail("a CLI step failed");
    if (lookup_s >= 120.0) perf.fail(fmt::format("lookup build {:.1f} s", lookup_s));
    if (sweep_s >= 60.0) perf.fail(fmt::format("cached sweep {:.1f} s", sweep_s));
    if (perf.pass) {
        perf.detail = fmt::format("lookup build {:.1f} s (< 120), cached sweep {:.1f} s (< 60)",
                                  lookup_s, sweep_s);
    }
    report(9, "performance", perf);

    fmt::print("{} of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
