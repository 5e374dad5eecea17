#include "txrate/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "txrate/csv.hpp"

namespace txrate {

void ThermalParameters::validate() const {
    const auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument(std::string("thermal parameter must be positive: ") +
                                        name);
        }
    };
    positive(rated_mva, "rated_mva");
    positive(top_oil_rise_r_c, "top_oil_rise_r_c");
    positive(hotspot_rise_r_c, "hotspot_rise_r_c");
    positive(loss_ratio, "loss_ratio");
    positive(tau_top_oil_h, "tau_top_oil_h");
    positive(tau_winding_h, "tau_winding_h");
    if (!(n >= 0.5 && n <= 1.0)) throw std::invalid_argument("oil exponent n outside [0.5, 1]");
    if (!(m >= 0.5 && m <= 1.0)) {
        throw std::invalid_argument("winding exponent m outside [0.5, 1]");
    }
    if (!(tau_top_oil_h > tau_winding_h)) {
        throw std::invalid_argument("tau_top_oil_h must exceed tau_winding_h");
    }
}

ThermalParameters preset_onaf50() {
    ThermalParameters p;
    p.rated_mva = 50.0;
    p.top_oil_rise_r_c = 55.0;
    p.hotspot_rise_r_c = 25.0;
    p.loss_ratio = 5.0;
    p.tau_top_oil_h = 3.5;
    p.tau_winding_h = 0.08;
    p.n = 0.9;
    p.m = 0.8;
    return p;
}

double top_oil_rise_ultimate(const ThermalParameters& p, double k) {
    return p.top_oil_rise_r_c *
           std::pow((k * k * p.loss_ratio + 1.0) / (p.loss_ratio + 1.0), p.n);
}

double top_oil_step(const ThermalParameters& p, double rise_prev_c, double k, double dt_hours) {
    const double ultimate = top_oil_rise_ultimate(p, k);
    return (ultimate - rise_prev_c) * (1.0 - std::exp(-dt_hours / p.tau_top_oil_h)) +
           rise_prev_c;
}

double hotspot_step(const ThermalParameters& p, double k_prev, double k, double dt_hours) {
    const double initial = p.hotspot_rise_r_c * std::pow(k_prev, 2.0 * p.m);
    const double ultimate = p.hotspot_rise_r_c * std::pow(k, 2.0 * p.m);
    return (ultimate - initial) * (1.0 - std::exp(-dt_hours / p.tau_winding_h)) + initial;
}

double aging_factor(double theta_h_c) {
    return std::exp(15000.0 / 383.0 - 15000.0 / (theta_h_c + 273.0));
}

DayThermalResult simulate_day(const ThermalParameters& p, const std::array<double, 24>& load_pu,
                              const std::array<double, 24>& ambient_c,
                              const ThermalOptions& options) {
    for (double k : load_pu) {
        if (!std::isfinite(k) || k < 0.0) {
            throw std::invalid_argument("per-unit loads must be finite and non-negative");
        }
    }
    for (double a : ambient_c) {
        if (!std::isfinite(a)) throw std::invalid_argument("ambient temperatures must be finite");
    }
    if (!(options.dt_hours > 0.0)) throw std::invalid_argument("dt_hours must be positive");

    DayThermalResult result;
    // The winding rise has no pass-to-pass state: its departing value is
    // recomputed from the previous hour's load each hour (cyclically).
    for (int h = 0; h < 24; ++h) {
        const double k_prev = load_pu[(h + 23) % 24];
        result.hotspot_rise_c[h] = hotspot_step(p, k_prev, load_pu[h], options.dt_hours);
    }

    std::array<double, 24> prev_pass{};
    double start = options.initial_top_oil_c;
    for (int pass = 1; pass <= options.max_passes; ++pass) {
        double rise = start;
        for (int h = 0; h < 24; ++h) {
            rise = top_oil_step(p, rise, load_pu[h], options.dt_hours);
            result.top_oil_rise_c[h] = rise;
        }
        result.passes = pass;
        if (pass > 1) {
            double residual = 0.0;
            for (int h = 0; h < 24; ++h) {
                residual = std::max(residual, std::abs(result.top_oil_rise_c[h] - prev_pass[h]));
            }
            result.residual_c = residual;
            if (residual < options.convergence_c) break;
        }
        prev_pass = result.top_oil_rise_c;
        start = rise;  // hour 24 feeds hour 1 of the next pass
        if (pass == options.max_passes) result.converged = false;
    }

    double aging_sum = 0.0;
    for (int h = 0; h < 24; ++h) {
        result.hotspot_c[h] = ambient_c[h] + result.top_oil_rise_c[h] + result.hotspot_rise_c[h];
        result.aging[h] = aging_factor(result.hotspot_c[h]);
        aging_sum += result.aging[h];
    }
    result.f_eqa = aging_sum / 24.0;
    result.peak_hotspot_c = *std::max_element(result.hotspot_c.begin(), result.hotspot_c.end());
    return result;
}

void write_trace_csv(std::ostream& out, const std::array<double, 24>& load_pu,
                     const std::array<double, 24>& ambient_c, const DayThermalResult& result) {
    out << "hour,load_pu,ambient_c,dtheta_to_c,dtheta_h_c,theta_h_c,f_aa\n";
    for (int h = 0; h < 24; ++h) {
        out << h << ',' << format_double(load_pu[h]) << ',' << format_double(ambient_c[h]) << ','
            << format_double(result.top_oil_rise_c[h]) << ','
            << format_double(result.hotspot_rise_c[h]) << ','
            << format_double(result.hotspot_c[h]) << ',' << format_double(result.aging[h])
            << '\n';
    }
}

ThermalParameters parse_thermal_params(std::istream& content) {
    ThermalParameters p;
    bool any = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(content, line)) {
        ++line_no;
        std::string_view row = strip_cr(line);
        if (const auto hash = row.find('#'); hash != std::string_view::npos) {
            row = row.substr(0, hash);
        }
        const auto eq = row.find('=');
        const auto trim = [](std::string_view s) {
            while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
            return s;
        };
        if (eq == std::string_view::npos) {
            if (!trim(row).empty()) {
                throw std::invalid_argument("thermal parameters line " + std::to_string(line_no) +
                                            ": expected key = value");
            }
            continue;
        }
        const std::string_view key = trim(row.substr(0, eq));
        const std::string_view value = trim(row.substr(eq + 1));
        if (key == "preset") {
            if (value != "onaf50") {
                throw std::invalid_argument("unknown thermal preset: " + std::string(value));
            }
            p = preset_onaf50();
            any = true;
            continue;
        }
        double v = 0.0;
        if (!parse_double_field(value, v)) {
            throw std::invalid_argument("thermal parameters line " + std::to_string(line_no) +
                                        ": non-numeric value");
        }
        any = true;
        if (key == "rated_mva") {
            p.rated_mva = v;
        } else if (key == "top_oil_rise_r_c") {
            p.top_oil_rise_r_c = v;
        } else if (key == "hotspot_rise_r_c") {
            p.hotspot_rise_r_c = v;
        } else if (key == "loss_ratio") {
            p.loss_ratio = v;
        } else if (key == "tau_top_oil_h") {
            p.tau_top_oil_h = v;
        } else if (key == "tau_winding_h") {
            p.tau_winding_h = v;
        } else if (key == "n") {
            p.n = v;
        } else if (key == "m") {
            p.m = v;
        } else {
            throw std::invalid_argument("unknown thermal parameter: " + std::string(key));
        }
    }
    if (!any) throw std::invalid_argument("thermal parameter file is empty");
    p.validate();
    return p;
}

}  // namespace txrate
