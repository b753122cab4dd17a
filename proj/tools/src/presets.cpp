#include "presets.hpp"

#include <cmath>
#include <stdexcept>

namespace fibersim::cli {

namespace {

// Shared target-side defaults: delta0' = 0.1 D, coupling scale
// omegatilde = 0.004 omega_T.
void set_target_scales(TargetCoulombSystem& t) {
    t.delta0_prime = 0.1;
    t.omega_T_prime = 1.0;
    t.charge_scale = 0.004 / (t.delta0_prime * t.delta0_prime);
}

}  // namespace

TargetCoulombSystem line3_target() {
    TargetCoulombSystem t;
    t.ion_positions.resize(3, 1);
    t.ion_positions << 0.0, 1.0, 2.0;
    set_target_scales(t);
    return t;
}

ChainGeometry line3_fiber() { return ChainGeometry({0.0, 0.375, 0.75}); }

TargetCoulombSystem triangle_target(bool suppressed) {
    TargetCoulombSystem t;
    t.ion_positions.resize(3, 2);
    t.ion_positions << 0.0, 0.0, std::sqrt(3.0) / 2.0, 0.5, 0.0, 1.0;
    set_target_scales(t);
    if (suppressed) {
        t.mask.resize(3, 3);
        t.mask.setConstant(true);
        t.mask(0, 2) = t.mask(2, 0) = false;
    }
    return t;
}

ChainGeometry triangle_fiber() {
    const double base = 5.0 / 3.0;
    return ChainGeometry({0.0, 1.0 / 3.0, 2.0 / 3.0, base, base + 0.25, base + 0.5});
}

ChainConfig fig5_chain() {
    ChainConfig c;
    c.geometry = ChainGeometry({0.0, 0.75, 0.75 + 0.875});
    c.spectrum = PumpSpectrum({{1.0, 1.0}, {4.0 / 3.0, 0.82}});
    return c;
}

ChainConfig fig6_chain() {
    ChainConfig c;
    c.geometry = ChainGeometry({0.0, 0.5, 1.1});
    c.spectrum = PumpSpectrum({{1.0, 0.1}});
    return c;
}

ChainConfig fig7_chain(double x3) {
    ChainConfig c;
    c.geometry = ChainGeometry({0.0, 1.0, x3});
    c.spectrum = PumpSpectrum({{1.0, 0.1}});
    return c;
}

PhysicalParams preset_physical(const std::string& name) {
    if (name == "cesium") return cesium_params();
    throw std::invalid_argument("unknown physical preset: " + name);
}

ChainConfig preset_chain(const std::string& name) {
    if (name == "fig5") return fig5_chain();
    if (name == "fig6" || name == "fig8") return fig6_chain();
    if (name == "fig7") return fig7_chain(2.0);
    throw std::invalid_argument("unknown chain preset: " + name);
}

}  // namespace fibersim::cli
