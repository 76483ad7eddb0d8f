#ifndef BBTEA_RADIO_HPP
#define BBTEA_RADIO_HPP

#include "bbtea/rng.hpp"
#include "bbtea/types.hpp"

#include <array>
#include <span>

namespace bbtea {

/// Macro-cell link budget defaults.
struct LinkBudgetParams {
    double tx_power_dbm = 40.0;
    double tx_gain_db = 16.0;
    double tx_losses_db = 1.0;
    double rx_gain_db = 0.0;
    double rx_losses_db = 4.0;
    double noise_figure_db = 1.5;
    double tx_height_m = 30.0;
    double rx_height_m = 1.5;
    int sectors = 3;
    double indoor_probability = 0.5;
    double los_cutoff_m = 500.0;
    double penetration_mean_db = 12.0;
    double penetration_sigma_db = 8.0;
    // RMa environment constants: average building height and street width.
    double building_height_m = 5.0;
    double street_width_m = 20.0;

    bool shadow_fading = true;
    bool building_penetration = true;
};

/// True when the path is treated as line-of-sight.
inline bool is_los(double distance_m, const LinkBudgetParams& p) {
    return distance_m <= p.los_cutoff_m;
}

/// Deterministic TR 38.901 path loss, dB. Urban and suburban use UMa,
/// rural uses RMa. `distance_m` is the 2-D ground distance.
/// Throws ValidationError outside the model's frequency/distance validity.
double median_path_loss(double freq_mhz, double distance_m, Geotype geotype, bool los,
                        const LinkBudgetParams& p = {});

/// Log-normal shadow-fading standard deviation for the environment, dB.
double shadow_fading_sigma(double freq_mhz, double distance_m, Geotype geotype, bool los,
                           const LinkBudgetParams& p = {});

/// Building penetration loss for one user, dB. Zero when the user is drawn
/// outdoors or penetration is disabled.
double draw_penetration_loss(CounterRng& rng, const LinkBudgetParams& p = {});

/// Median loss plus a shadow-fading draw plus a per-call penetration draw.
double path_loss(double freq_mhz, double distance_m, Geotype geotype, bool los, CounterRng& rng,
                 const LinkBudgetParams& p = {});

double received_power(const LinkBudgetParams& p, double path_loss_db);

inline constexpr double kBoltzmann = 1.38e-23;
inline constexpr double kNoiseTemperatureK = 290.0;

double noise_dbm(double bandwidth_hz, double noise_figure_db);

/// 10 log10(S / (sum I + N)) with all inputs in dBm.
double sinr_db(double signal_dbm, std::span<const double> interferer_dbms, double noise_dbm);

struct SeLookupRow {
    int cqi;
    double sinr_db;
    double se_4g;  // MIMO 2x2
    double se_5g;  // MIMO 4x4
};

const std::array<SeLookupRow, 15>& se_lookup_table();

/// Spectral efficiency of the highest CQI whose threshold the SINR reaches;
/// zero below CQI 1.
double se_from_sinr(double sinr_db, Generation generation);

}  // namespace bbtea

#endif  // BBTEA_RADIO_HPP
