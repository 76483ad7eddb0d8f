#include "bbtea/report.hpp"

#include "fixtures.hpp"
#include "json.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace bbtea;

namespace {

DecileResult row(std::string scenario, std::string strategy, int decile, double total) {
    DecileResult r;
    r.scenario = std::move(scenario);
    r.strategy = std::move(strategy);
    r.decile = decile;
    r.cost.total = total;
    return r;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

}  // namespace

TEST(DecileCsv, SortedWithHeader) {
    std::ostringstream out;
    write_decile_csv(out, {row("S2", "4G_wireless", 1, 1), row("S1", "5G_NSA_fiber", 2, 2),
                           row("S1", "5G_NSA_fiber", 1, 3), row("S1", "4G_fiber", 1, 4)});
    const auto l = lines(out.str());
    ASSERT_EQ(l.size(), 5u);
    EXPECT_EQ(l[0],
              "scenario,strategy,decile,population,area_km2,new_sites,upgraded_sites,ran,backhaul,"
              "core,admin,spectrum,tax,profit,total_cost,revenue,cum_cost,cum_revenue,viable,"
              "subsidy,cost_per_user");
    EXPECT_EQ(l[1].substr(0, 13), "S1,4G_fiber,1");
    EXPECT_EQ(l[2].substr(0, 17), "S1,5G_NSA_fiber,1");
    EXPECT_EQ(l[3].substr(0, 17), "S1,5G_NSA_fiber,2");
    EXPECT_EQ(l[4].substr(0, 16), "S2,4G_wireless,1");
}

TEST(DecileCsv, MoneyRoundedWithoutNegativeZero) {
    auto r = row("S1", "4G_wireless", 1, 1234.5678);
    r.cost.ran = -0.001;
    r.population = 1234.5;
    r.viable = true;
    std::ostringstream out;
    write_decile_csv(out, {r});
    const auto l = lines(out.str());
    EXPECT_NE(l[1].find(",1234.57,"), std::string::npos) << l[1];
    EXPECT_EQ(l[1].find("-0.00"), std::string::npos) << l[1];
    EXPECT_NE(l[1].find(",1234.5,"), std::string::npos) << l[1];
    EXPECT_NE(l[1].find(",true,"), std::string::npos);
}

TEST(SensitivityCsv, Layout) {
    std::ostringstream out;
    write_sensitivity_csv(out, {{"S1", "4G_wireless", 0.0, 100.0}, {"S1", "4G_wireless", 1.0, 60.0}});
    const auto l = lines(out.str());
    ASSERT_EQ(l.size(), 3u);
    EXPECT_EQ(l[0], "scenario,strategy,spectrum_scalar,max_viable_coverage_pct");
    EXPECT_EQ(l[1], "S1,4G_wireless,0,100");
    EXPECT_EQ(l[2], "S1,4G_wireless,1,60");
}

TEST(Hashing, KnownVectors) {
    EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    const auto dir = fixture::temp_dir("hash");
    std::ofstream(dir / "f.txt") << "abc";
    EXPECT_EQ(sha256_file(dir / "f.txt"), sha256_hex("abc"));
    EXPECT_THROW(sha256_file(dir / "missing.txt"), ValidationError);
}

TEST(Manifest, FixedShapeAndInputSensitivity) {
    Manifest m;
    m.tool_version = "0.1.0";
    m.settings = "seed=1\n";
    m.inputs = {{"areas_csv", sha256_hex("a")}};
    m.outputs = {{"decile_results.csv", sha256_hex("b")}};
    const auto text = render_manifest(m);
    const auto j = nlohmann::ordered_json::parse(text);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    EXPECT_EQ(keys, (std::vector<std::string>{"tool", "version", "settings_sha256", "settings",
                                              "inputs", "outputs"}));
    EXPECT_EQ(j["inputs"][0]["sha256"], sha256_hex("a"));
    EXPECT_EQ(render_manifest(m), text);
    m.inputs[0].sha256 = sha256_hex("a ");
    EXPECT_NE(render_manifest(m), text);
}
