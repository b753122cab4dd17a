// readout.hpp — Outgoing fiber field amplitudes at the chain edges,
// classically and as linearized Fock-space operators, plus state-dependent
// output intensities.
//
// Intensities are reported in units of I_unit, the output of a single
// particle summed over all spectral components; per-component weights are
// proportional to the pump intensity I_k (~ Omega_k / k). Interference
// between different spectral components is dropped throughout (fields at
// different frequencies average out), so every intensity is a weighted sum of
// per-component contributions.

#pragma once

#include <complex>
#include <vector>

#include "fibersim/fockspace.hpp"
#include "fibersim/model.hpp"

namespace fibersim {

enum class OutputDirection { left, right };

/// Unweighted classical amplitude per spectral component:
/// A_k = sum_i exp(i 2 pi kappa (x_i - x_1)) (left) or with x_N - x_i (right).
std::vector<std::complex<double>> classical_output_amplitudes(const ChainGeometry& geometry,
                                                              const PumpSpectrum& spectrum,
                                                              OutputDirection direction);

/// Classical output intensity sum_k w_k |A_k|^2, in I_unit units.
double classical_output_intensity(const ChainGeometry& geometry, const PumpSpectrum& spectrum,
                                  OutputDirection direction);

struct FieldOperatorOptions {
    /// Linearization order in k delta0: 0 (classical), 1 or 2.
    int order = 2;
};

struct OutputFieldComponent {
    double k = 1.0;       ///< k0 units
    double weight = 0.0;  ///< intensity weight w_k, relative
    Operator amplitude;   ///< dimensionless per-component amplitude operator
};

/// Per-component amplitude operators: the classical phase sum plus
/// displacement-difference corrections (i k delta0 B_i - k^2 delta0^2 B_i^2/2
/// with B_i the edge-referenced displacement difference).
std::vector<OutputFieldComponent> output_field_components(const ChainGeometry& geometry,
                                                          const PumpSpectrum& spectrum,
                                                          const OscillatorParams& oscillator,
                                                          const FockSpace& space,
                                                          OutputDirection direction,
                                                          const FieldOperatorOptions& options = {});

/// Combined field operator E = sum_k sqrt(w_k) A_k (weights relative to I_unit).
Operator output_field_operator(const ChainGeometry& geometry, const PumpSpectrum& spectrum,
                               const OscillatorParams& oscillator, const FockSpace& space,
                               OutputDirection direction, const FieldOperatorOptions& options = {});

/// E^dag E for the combined operator; Hermitian positive semidefinite.
Operator intensity_operator(const ChainGeometry& geometry, const PumpSpectrum& spectrum,
                            const OscillatorParams& oscillator, const FockSpace& space,
                            OutputDirection direction, const FieldOperatorOptions& options = {});

/// Coherent-output intensity sum_k w_k |<A_k>|^2 / I_unit.
double state_dependent_intensity(const FockStateVector& state, const ChainGeometry& geometry,
                                 const PumpSpectrum& spectrum, const OscillatorParams& oscillator,
                                 OutputDirection direction,
                                 const FieldOperatorOptions& options = {});
double state_dependent_intensity(const DensityMatrix& rho, const ChainGeometry& geometry,
                                 const PumpSpectrum& spectrum, const OscillatorParams& oscillator,
                                 OutputDirection direction,
                                 const FieldOperatorOptions& options = {});

}  // namespace fibersim
