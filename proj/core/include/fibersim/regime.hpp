// regime.hpp — Laboratory-parameter feasibility checks. This is the only
// module working in SI units; everything else is dimensionless.

#pragma once

#include <string>

namespace fibersim {

struct PhysicalParams {
    double omega = 0.0;         ///< transition frequency, rad/s
    double gamma = 0.0;         ///< free-space decay rate, 1/s
    double mass = 0.0;          ///< kg
    double detuning = 0.0;      ///< detuning Delta in units of gamma
    double fiber_radius = 0.0;  ///< m
    double guided_fraction = 0.13;  ///< gamma_guid / gamma
    double saturation = 0.0;    ///< pump intensity ratio I0 / Isat
    double omega_trap = 0.0;    ///< trap frequency, 1/s
};

/// Cesium D2 parameter set: omega = 2.2e15, gamma = 33e6, m = 220e-27 kg,
/// r = 200 nm, Delta = 100 gamma, gamma_guid = 0.13 gamma.
PhysicalParams cesium_params();

void validate_physical_params(const PhysicalParams& p);

/// Low-saturation excited-state fraction I0/Isat / (2 (1 + 4 Delta^2/Gamma^2)).
double excited_state_fraction(const PhysicalParams& p);

struct IntensityReport {
    double rho_ee = 0.0;
    double intensity_per_saturation = 0.0;  ///< W/m^2 per unit I0/Isat
    bool saturation_ok = false;             ///< rho_ee <= 0.1
};

/// Intensity scattered into the fiber per particle: (h_planck omega / A) *
/// gamma_guid * rho_ee with A = pi r^2, per unit I0/Isat.
IntensityReport scattered_intensity(const PhysicalParams& p);

struct LambDickeReport {
    double k_delta0 = 0.0;       ///< (omega/c) sqrt(hbar / (2 m omega_trap))
    double omega_trap_bound = 0.0;  ///< required omega_trap scale, 1/s
    double threshold = 0.1;
    bool pass = false;
};

LambDickeReport check_lamb_dicke(const PhysicalParams& p, double threshold = 0.1);

struct InteractionBoundReport {
    double omega_k_requested = 0.0;  ///< 1/s
    double omega_k_bound = 0.0;      ///< gamma_guid (I/Isat) / (2 (1 + Delta^2/Gamma^2)), 1/s
    double margin = 0.0;             ///< bound / requested
    double hierarchy_ratio = 0.0;    ///< trap energy vs pump energy, 4 omega_T/(gamma_guid rho_ee)
    bool pass = false;               ///< margin >= pass_ratio
    bool warn = false;               ///< margin in [warn_ratio, pass_ratio)
};

InteractionBoundReport check_interaction_bound(const PhysicalParams& p, double omega_k_requested,
                                               double pass_ratio = 10.0, double warn_ratio = 3.0);

/// Full report of all three checks as a JSON document.
std::string regime_report_json(const PhysicalParams& p, double omega_k_requested);

}  // namespace fibersim
