#include "bbtea/radio.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bbtea {

namespace {

constexpr double kSpeedOfLight = 299792458.0;
constexpr double kMaxDistanceM = 200000.0;

double distance_3d(double d2d, const LinkBudgetParams& p) {
    return std::hypot(d2d, p.tx_height_m - p.rx_height_m);
}

// UMa breakpoint with an effective environment height of 1 m (UT below 13 m).
double uma_breakpoint(double freq_hz, const LinkBudgetParams& p) {
    constexpr double kEnvHeight = 1.0;
    return 4.0 * (p.tx_height_m - kEnvHeight) * (p.rx_height_m - kEnvHeight) * freq_hz /
           kSpeedOfLight;
}

double uma_los(double f_ghz, double d2d, const LinkBudgetParams& p) {
    const double d3d = distance_3d(d2d, p);
    const double bp = uma_breakpoint(f_ghz * 1e9, p);
    if (d2d <= bp) return 28.0 + 22.0 * std::log10(d3d) + 20.0 * std::log10(f_ghz);
    const double dh = p.tx_height_m - p.rx_height_m;
    return 28.0 + 40.0 * std::log10(d3d) + 20.0 * std::log10(f_ghz) -
           9.0 * std::log10(bp * bp + dh * dh);
}

double uma_nlos(double f_ghz, double d2d, const LinkBudgetParams& p) {
    const double d3d = distance_3d(d2d, p);
    const double nlos = 13.54 + 39.08 * std::log10(d3d) + 20.0 * std::log10(f_ghz) -
                        0.6 * (p.rx_height_m - 1.5);
    return std::max(uma_los(f_ghz, d2d, p), nlos);
}

double rma_breakpoint(double freq_hz, const LinkBudgetParams& p) {
    return 2.0 * std::numbers::pi * p.tx_height_m * p.rx_height_m * freq_hz / kSpeedOfLight;
}

double rma_pl1(double f_ghz, double d3d, const LinkBudgetParams& p) {
    const double h = p.building_height_m;
    return 20.0 * std::log10(40.0 * std::numbers::pi * d3d * f_ghz / 3.0) +
           std::min(0.03 * std::pow(h, 1.72), 10.0) * std::log10(d3d) -
           std::min(0.044 * std::pow(h, 1.72), 14.77) + 0.002 * std::log10(h) * d3d;
}

double rma_los(double f_ghz, double d2d, const LinkBudgetParams& p) {
    const double d3d = distance_3d(d2d, p);
    const double bp = rma_breakpoint(f_ghz * 1e9, p);
    if (d2d <= bp) return rma_pl1(f_ghz, d3d, p);
    return rma_pl1(f_ghz, bp, p) + 40.0 * std::log10(d3d / bp);
}

double rma_nlos(double f_ghz, double d2d, const LinkBudgetParams& p) {
    const double d3d = distance_3d(d2d, p);
    const double h = p.building_height_m;
    const double w = p.street_width_m;
    const double hbs = p.tx_height_m;
    const double hut = p.rx_height_m;
    const double nlos = 161.04 - 7.1 * std::log10(w) + 7.5 * std::log10(h) -
                        (24.37 - 3.7 * std::pow(h / hbs, 2)) * std::log10(hbs) +
                        (43.42 - 3.1 * std::log10(hbs)) * (std::log10(d3d) - 3.0) +
                        20.0 * std::log10(f_ghz) -
                        (3.2 * std::pow(std::log10(11.75 * hut), 2) - 4.97);
    return std::max(rma_los(f_ghz, d2d, p), nlos);
}

void check_validity(double freq_mhz, double distance_m, Geotype geotype) {
    const double max_mhz = geotype == Geotype::Rural ? 30000.0 : 100000.0;
    if (!(freq_mhz >= 500.0 && freq_mhz <= max_mhz)) {
        throw ValidationError(fmt::format("frequency {} MHz outside model validity [500, {}] MHz",
                                          freq_mhz, max_mhz));
    }
    if (!(distance_m > 0.0 && distance_m <= kMaxDistanceM)) {
        throw ValidationError(
            fmt::format("distance {} m outside model validity (0, {}] m", distance_m, kMaxDistanceM));
    }
}

}  // namespace

double median_path_loss(double freq_mhz, double distance_m, Geotype geotype, bool los,
                        const LinkBudgetParams& p) {
    check_validity(freq_mhz, distance_m, geotype);
    const double f_ghz = freq_mhz / 1000.0;
    if (geotype == Geotype::Rural) {
        return los ? rma_los(f_ghz, distance_m, p) : rma_nlos(f_ghz, distance_m, p);
    }
    return los ? uma_los(f_ghz, distance_m, p) : uma_nlos(f_ghz, distance_m, p);
}

double shadow_fading_sigma(double freq_mhz, double distance_m, Geotype geotype, bool los,
                           const LinkBudgetParams& p) {
    if (geotype == Geotype::Rural) {
        if (!los) return 8.0;
        return distance_m <= rma_breakpoint(freq_mhz * 1e6, p) ? 4.0 : 6.0;
    }
    return los ? 4.0 : 6.0;
}

double draw_penetration_loss(CounterRng& rng, const LinkBudgetParams& p) {
    const bool indoor = rng.uniform() < p.indoor_probability;
    const double loss = rng.normal(p.penetration_mean_db, p.penetration_sigma_db);
    return indoor && p.building_penetration ? loss : 0.0;
}

double path_loss(double freq_mhz, double distance_m, Geotype geotype, bool los, CounterRng& rng,
                 const LinkBudgetParams& p) {
    double loss = median_path_loss(freq_mhz, distance_m, geotype, los, p);
    const double sigma = shadow_fading_sigma(freq_mhz, distance_m, geotype, los, p);
    const double shadow = rng.normal(0.0, sigma);
    if (p.shadow_fading) loss += shadow;
    return loss + draw_penetration_loss(rng, p);
}

double received_power(const LinkBudgetParams& p, double path_loss_db) {
    return p.tx_power_dbm + p.tx_gain_db - p.tx_losses_db - path_loss_db + p.rx_gain_db -
           p.rx_losses_db;
}

double noise_dbm(double bandwidth_hz, double noise_figure_db) {
    return 10.0 * std::log10(kBoltzmann * kNoiseTemperatureK * 1000.0) + noise_figure_db +
           10.0 * std::log10(bandwidth_hz);
}

double sinr_db(double signal_dbm, std::span<const double> interferer_dbms, double noise_dbm_v) {
    auto to_mw = [](double dbm) { return std::pow(10.0, dbm / 10.0); };
    double denom = to_mw(noise_dbm_v);
    for (double i : interferer_dbms) denom += to_mw(i);
    return 10.0 * std::log10(to_mw(signal_dbm) / denom);
}

const std::array<SeLookupRow, 15>& se_lookup_table() {
    static constexpr std::array<SeLookupRow, 15> table{{
        {1, -6.7, 0.3, 0.15},
        {2, -4.7, 0.46, 1.02},
        {3, -2.3, 0.74, 2.21},
        {4, 0.2, 1.2, 3.2},
        {5, 2.4, 1.6, 4.0},
        {6, 4.3, 2.2, 5.41},
        {7, 5.9, 2.8, 6.2},
        {8, 8.1, 3.8, 8.0},
        {9, 10.3, 4.8, 9.5},
        {10, 11.7, 5.4, 11.0},
        {11, 14.1, 6.6, 14.0},
        {12, 16.3, 7.8, 16.0},
        {13, 18.7, 9.0, 19.0},
        {14, 21.0, 10.2, 22.0},
        {15, 22.7, 11.4, 25.0},
    }};
    return table;
}

double se_from_sinr(double sinr, Generation generation) {
    const auto& table = se_lookup_table();
    double se = 0.0;
    for (const auto& row : table) {
        if (sinr < row.sinr_db) break;
        se = generation == Generation::G4 ? row.se_4g : row.se_5g;
    }
    return se;
}

}  // namespace bbtea
