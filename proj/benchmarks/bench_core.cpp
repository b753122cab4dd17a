#include <benchmark/benchmark.h>

#include <complex>
#include <random>

#include "fibersim/dynamics.hpp"
#include "fibersim/hamiltonian.hpp"

using namespace fibersim;

namespace {

ChainGeometry make_geometry(std::size_t n) {
    std::vector<double> positions;
    for (std::size_t i = 0; i < n; ++i) positions.push_back(0.45 * static_cast<double>(i));
    return ChainGeometry(positions);
}

PumpSpectrum make_spectrum() {
    return PumpSpectrum({{1.0, 0.5}, {1.2, 0.3}, {1.4, 0.2}, {1.6, 0.1}});
}

void bm_coupling_matrix(benchmark::State& state) {
    const ChainGeometry geo = make_geometry(static_cast<std::size_t>(state.range(0)));
    const PumpSpectrum sp = make_spectrum();
    for (auto _ : state) benchmark::DoNotOptimize(coupling_matrix(geo, sp));
}
BENCHMARK(bm_coupling_matrix)->Arg(4)->Arg(16)->Arg(64);

void bm_rwa_hamiltonian(benchmark::State& state) {
    const ChainGeometry geo = make_geometry(3);
    const PumpSpectrum sp = make_spectrum();
    const FockSpace space(3, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(rwa_hamiltonian(geo, sp, space));
}
BENCHMARK(bm_rwa_hamiltonian)->Arg(2)->Arg(4)->Arg(6);

void bm_propagator_build(benchmark::State& state) {
    const ChainGeometry geo = make_geometry(3);
    const PumpSpectrum sp = make_spectrum();
    const FockSpace space(3, static_cast<std::size_t>(state.range(0)));
    const Operator h = rwa_hamiltonian(geo, sp, space);
    for (auto _ : state) benchmark::DoNotOptimize(Propagator(h));
}
BENCHMARK(bm_propagator_build)->Arg(2)->Arg(4);

void bm_evolve(benchmark::State& state) {
    const ChainGeometry geo = make_geometry(3);
    const PumpSpectrum sp = make_spectrum();
    const FockSpace space(3, static_cast<std::size_t>(state.range(0)));
    const Operator h = rwa_hamiltonian(geo, sp, space);
    const Propagator prop(h);
    const FockStateVector psi0 = basis_state(space, {0, 0, 1});
    double t = 0.0;
    for (auto _ : state) {
        t += 0.1;
        benchmark::DoNotOptimize(prop.apply(psi0, t));
    }
}
BENCHMARK(bm_evolve)->Arg(2)->Arg(4);

void bm_partial_trace(benchmark::State& state) {
    const FockSpace space(3, static_cast<std::size_t>(state.range(0)));
    std::mt19937 rng(42);
    std::normal_distribution<double> gauss;
    FockStateVector psi{space, Eigen::VectorXcd(space.dim())};
    for (Eigen::Index i = 0; i < space.dim(); ++i)
        psi.amplitudes(i) = std::complex<double>(gauss(rng), gauss(rng));
    psi.normalize();
    for (auto _ : state) benchmark::DoNotOptimize(partial_trace(psi, {0, 1}));
}
BENCHMARK(bm_partial_trace)->Arg(2)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
