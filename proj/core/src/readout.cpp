#include "fibersim/readout.hpp"

#include <cmath>
#include <stdexcept>

namespace fibersim {

namespace {

// Phase argument per particle: distance from the emitting edge, nonnegative.
double edge_distance(const ChainGeometry& geometry, OutputDirection direction, std::size_t i) {
    if (direction == OutputDirection::left)
        return geometry.position(i) - geometry.position(0);
    return geometry.position(geometry.n_particles() - 1) - geometry.position(i);
}

}  // namespace

std::vector<std::complex<double>> classical_output_amplitudes(const ChainGeometry& geometry,
                                                              const PumpSpectrum& spectrum,
                                                              OutputDirection direction) {
    std::vector<std::complex<double>> amps(spectrum.size(), 0.0);
    for (std::size_t c = 0; c < spectrum.size(); ++c)
        for (std::size_t i = 0; i < geometry.n_particles(); ++i)
            amps[c] += std::polar(1.0, kTwoPi * spectrum[c].k * edge_distance(geometry, direction, i));
    return amps;
}

double classical_output_intensity(const ChainGeometry& geometry, const PumpSpectrum& spectrum,
                                  OutputDirection direction) {
    const auto amps = classical_output_amplitudes(geometry, spectrum, direction);
    double intensity = 0.0;
    for (std::size_t c = 0; c < spectrum.size(); ++c)
        intensity += spectrum.intensity_weight(c) * std::norm(amps[c]);
    return intensity / spectrum.total_intensity_weight();
}

std::vector<OutputFieldComponent> output_field_components(const ChainGeometry& geometry,
                                                          const PumpSpectrum& spectrum,
                                                          const OscillatorParams& oscillator,
                                                          const FockSpace& space,
                                                          OutputDirection direction,
                                                          const FieldOperatorOptions& options) {
    const std::size_t n = geometry.n_particles();
    if (space.n_modes() != n)
        throw std::invalid_argument("Fock space mode count does not match chain size");
    if (options.order < 0 || options.order > 2)
        throw std::invalid_argument("linearization order must be 0, 1 or 2");

    const std::size_t ref = direction == OutputDirection::left ? 0 : n - 1;
    std::vector<Operator> disp(n);  // a_i + a_i^dag
    for (std::size_t i = 0; i < n; ++i) {
        const Operator a = lowering_operator(space, i);
        disp[i] = a + a.adjoint();
    }

    std::vector<OutputFieldComponent> components;
    for (std::size_t c = 0; c < spectrum.size(); ++c) {
        OutputFieldComponent comp;
        comp.k = spectrum[c].k;
        comp.weight = spectrum.intensity_weight(c);
        comp.amplitude = Operator::Zero(space.dim(), space.dim());
        const double kd0 = kTwoPi * spectrum[c].k * oscillator.delta0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::complex<double> phase =
                std::polar(1.0, kTwoPi * spectrum[c].k * edge_distance(geometry, direction, i));
            comp.amplitude += phase * Operator::Identity(space.dim(), space.dim());
            if (options.order >= 1) {
                const Operator diff = direction == OutputDirection::left ? (disp[i] - disp[ref]).eval()
                                                                         : (disp[ref] - disp[i]).eval();
                comp.amplitude += phase * std::complex<double>(0.0, kd0) * diff;
                if (options.order >= 2)
                    comp.amplitude -= phase * (0.5 * kd0 * kd0) * (diff * diff);
            }
        }
        components.push_back(std::move(comp));
    }
    return components;
}

Operator output_field_operator(const ChainGeometry& geometry, const PumpSpectrum& spectrum,
                               const OscillatorParams& oscillator, const FockSpace& space,
                               OutputDirection direction, const FieldOperatorOptions& options) {
    Operator e = Operator::Zero(space.dim(), space.dim());
    for (const auto& comp :
         output_field_components(geometry, spectrum, oscillator, space, direction, options))
        e += std::sqrt(comp.weight) * comp.amplitude;
    return e;
}

Operator intensity_operator(const ChainGeometry& geometry, const PumpSpectrum& spectrum,
                            const OscillatorParams& oscillator, const FockSpace& space,
                            OutputDirection direction, const FieldOperatorOptions& options) {
    const Operator e =
        output_field_operator(geometry, spectrum, oscillator, space, direction, options);
    return e.adjoint() * e;
}

double state_dependent_intensity(const FockStateVector& state, const ChainGeometry& geometry,
                                 const PumpSpectrum& spectrum, const OscillatorParams& oscillator,
                                 OutputDirection direction, const FieldOperatorOptions& options) {
    FockSpace space = state.space;
    double intensity = 0.0;
    for (const auto& comp :
         output_field_components(geometry, spectrum, oscillator, space, direction, options)) {
        const std::complex<double> expectation =
            state.amplitudes.dot(comp.amplitude * state.amplitudes);
        intensity += comp.weight * std::norm(expectation);
    }
    return intensity / spectrum.total_intensity_weight();
}

double state_dependent_intensity(const DensityMatrix& rho, const ChainGeometry& geometry,
                                 const PumpSpectrum& spectrum, const OscillatorParams& oscillator,
                                 OutputDirection direction, const FieldOperatorOptions& options) {
    double intensity = 0.0;
    for (const auto& comp :
         output_field_components(geometry, spectrum, oscillator, rho.space, direction, options)) {
        const std::complex<double> expectation = (rho.matrix * comp.amplitude).trace();
        intensity += comp.weight * std::norm(expectation);
    }
    return intensity / spectrum.total_intensity_weight();
}

}  // namespace fibersim
