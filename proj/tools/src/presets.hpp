// presets.hpp — Versioned parameter fixtures for the CLI: chain
// configurations, design targets and the laboratory parameter set.

#pragma once

#include <string>

#include "fibersim/coulombmap.hpp"
#include "fibersim/model.hpp"
#include "fibersim/regime.hpp"

namespace fibersim::cli {

/// Three ions on a line (spacings D, D), fiber traps every 3/8 lambda0.
TargetCoulombSystem line3_target();
ChainGeometry line3_fiber();

/// Equilateral triangle (side D), six fiber slots; `suppressed` removes the
/// (1,3) pair interaction.
TargetCoulombSystem triangle_target(bool suppressed);
ChainGeometry triangle_fiber();

/// Two interacting particles plus one decoupled spectator.
ChainConfig fig5_chain();
/// Three particles with d12 = 1/2, d23 = 0.6 lambda0, single pump component.
ChainConfig fig6_chain();
/// d12 = lambda0, movable third particle (position x3 in lambda0 units).
ChainConfig fig7_chain(double x3);

PhysicalParams preset_physical(const std::string& name);

/// Look up a chain preset by name ("fig5", "fig6", "fig7", "fig8"); throws
/// on unknown names.
ChainConfig preset_chain(const std::string& name);

}  // namespace fibersim::cli
