// model.hpp — Chain geometry, pump spectra and the classical force/potential.
//
// Unit conventions used throughout the library:
//   * hbar = 1
//   * frequencies and interaction strengths in units of the trap frequency omega_T
//   * wavenumbers in units of the reference wavenumber k0
//   * lengths in units of the reference wavelength lambda0 = 2*pi/k0
// A wavenumber k (in k0 units) and a distance d (in lambda0 units) therefore
// enter every trigonometric factor as sin(2*pi*k*d) / cos(2*pi*k*d).

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace fibersim {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Fixes the reference wavenumber k0 (inverse length, SI or any consistent
/// unit). Only needed when converting to/from laboratory units; the rest of
/// the library works in the dimensionless convention above.
struct UnitSystem {
    double k0 = 1.0;

    double lambda0() const { return kTwoPi / k0; }
};

/// One spectral component of the transverse pump: wavenumber k (k0 units) and
/// interaction strength omega (omega_T units). Negative omega would require a
/// negative light intensity and is rejected.
struct SpectralComponent {
    double k = 1.0;
    double omega = 0.0;
};

class PumpSpectrum {
  public:
    PumpSpectrum() = default;
    explicit PumpSpectrum(std::vector<SpectralComponent> components);

    const std::vector<SpectralComponent>& components() const { return components_; }
    std::size_t size() const { return components_.size(); }
    const SpectralComponent& operator[](std::size_t i) const { return components_[i]; }

    /// Displacement coupling epsilon = Omega / (delta0 * k) for component i,
    /// with delta0 the oscillator length in lambda0 units.
    double epsilon(std::size_t i, double delta0) const;

    /// Per-component weight proportional to the pump intensity I_k
    /// (Omega_k scales as I_k * k, so I_k scales as Omega_k / k).
    double intensity_weight(std::size_t i) const;

    /// Sum of all intensity weights; the readout normalization unit.
    double total_intensity_weight() const;

  private:
    std::vector<SpectralComponent> components_;
};

/// Trap center positions along the fiber, strictly increasing, lambda0 units.
class ChainGeometry {
  public:
    explicit ChainGeometry(std::vector<double> positions);

    std::size_t n_particles() const { return positions_.size(); }
    double position(std::size_t i) const { return positions_[i]; }
    const std::vector<double>& positions() const { return positions_; }

    /// |x_j - x_i|, symmetric, zero diagonal.
    double pair_distance(std::size_t i, std::size_t j) const;

  private:
    std::vector<double> positions_;
};

struct OscillatorParams {
    double omega_trap = 1.0;  ///< trap frequency (defines the frequency unit)
    double delta0 = 0.05;     ///< oscillator length, lambda0 units
    double mass = 0.0;        ///< only used by the regime module (kg)
};

/// Classical radiation force on particle j (0-based) for arbitrary, not
/// necessarily linearized, positions. `intensity_scale` multiplies the
/// per-component force amplitude sigma*I_k/c, which in the dimensionless
/// convention is proportional to Omega_k/k.
double pair_force(const ChainGeometry& geometry, const PumpSpectrum& spectrum,
                  double intensity_scale, std::size_t j);

/// Total classical two-body potential, the antiderivative of pair_force.
double total_potential(const ChainGeometry& geometry, const PumpSpectrum& spectrum,
                       double intensity_scale);

/// Chain configuration as ingested from a JSON document
/// { "k0": float, "positions": [float], "spectrum": [{"k": f, "omega": f}],
///   "delta0": float, "omega_T": float }.
struct ChainConfig {
    UnitSystem units;
    ChainGeometry geometry{{0.0}};
    PumpSpectrum spectrum;
    OscillatorParams oscillator;
};

ChainConfig parse_chain_config(const std::string& json_text);
ChainConfig load_chain_config(const std::string& path);
std::string chain_config_to_json(const ChainConfig& config);

}  // namespace fibersim
