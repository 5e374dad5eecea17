#pragma once

#include <array>
#include <iosfwd>
#include <string>

namespace txrate {

/// Transformer thermal ratings and time constants. Rises are at rated load,
/// temperatures in degC, time constants in hours.
struct ThermalParameters {
    double rated_mva = 0.0;
    double top_oil_rise_r_c = 0.0;   // rated top-oil rise over ambient
    double hotspot_rise_r_c = 0.0;   // rated hot-spot rise over top oil
    double loss_ratio = 0.0;         // rated load loss / no-load loss
    double tau_top_oil_h = 0.0;
    double tau_winding_h = 0.0;
    double n = 0.0;  // oil exponent
    double m = 0.0;  // winding exponent

    /// Throws std::invalid_argument naming the first offending field.
    void validate() const;
};

/// 50 MVA ONAF example unit used by the fixtures and the CLI default config.
ThermalParameters preset_onaf50();

/// Reads `key = value` lines naming the ThermalParameters fields
/// (rated_mva, top_oil_rise_r_c, hotspot_rise_r_c, loss_ratio,
/// tau_top_oil_h, tau_winding_h, n, m). A `preset = onaf50` line loads the
/// preset first; later keys override it. The result is validated.
ThermalParameters parse_thermal_params(std::istream& content);

/// Ultimate top-oil rise at constant per-unit load k.
double top_oil_rise_ultimate(const ThermalParameters& p, double k);

/// One exponential step of the top-oil rise toward its ultimate value.
double top_oil_step(const ThermalParameters& p, double rise_prev_c, double k, double dt_hours);

/// One exponential step of the hot-spot rise; k_prev sets the initial
/// (departing) rise and k the ultimate one.
double hotspot_step(const ThermalParameters& p, double k_prev, double k, double dt_hours);

/// Relative aging rate of thermally upgraded paper at hot-spot theta_h_c;
/// equals 1 at 110 degC.
double aging_factor(double theta_h_c);

struct ThermalOptions {
    double dt_hours = 1.0;
    double convergence_c = 0.01;  // cyclic steady-state tolerance on rises
    int max_passes = 100;
    double initial_top_oil_c = 0.0;  // first-pass seed for the top-oil rise
};

struct DayThermalResult {
    std::array<double, 24> top_oil_rise_c{};
    std::array<double, 24> hotspot_rise_c{};
    std::array<double, 24> hotspot_c{};
    std::array<double, 24> aging{};
    double f_eqa = 0.0;       // daily equivalent aging, mean of the 24 rates
    double peak_hotspot_c = 0.0;
    int passes = 1;
    bool converged = true;
    double residual_c = 0.0;  // final pass-to-pass top-oil change
};

/// Simulates one 24 h cycle of hourly loads (per unit) against hourly
/// ambient, iterating the day until the end-of-day rises reproduce the
/// start-of-day ones (cyclic steady state). Hour 0 departs from hour 23's
/// state of the previous pass.
DayThermalResult simulate_day(const ThermalParameters& p, const std::array<double, 24>& load_pu,
                              const std::array<double, 24>& ambient_c,
                              const ThermalOptions& options = {});

void write_trace_csv(std::ostream& out, const std::array<double, 24>& load_pu,
                     const std::array<double, 24>& ambient_c, const DayThermalResult& result);

}  // namespace txrate
