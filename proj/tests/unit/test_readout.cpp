#include <doctest.h>

#include <cmath>
#include <complex>

#include "fibersim/dynamics.hpp"
#include "fibersim/readout.hpp"

using namespace fibersim;

TEST_CASE("single emitter radiates unit normalized intensity") {
    ChainGeometry geo({0.0});
    PumpSpectrum sp({{1.0, 0.4}, {1.3, 0.2}});
    CHECK(classical_output_intensity(geo, sp, OutputDirection::left) == doctest::Approx(1.0));
    CHECK(classical_output_intensity(geo, sp, OutputDirection::right) == doctest::Approx(1.0));
}

TEST_CASE("classical amplitudes carry the propagation phases") {
    ChainGeometry geo({0.0, 0.25});
    PumpSpectrum sp({{1.0, 0.4}});
    const auto left = classical_output_amplitudes(geo, sp, OutputDirection::left);
    REQUIRE(left.size() == 1);
    // d = lambda/4: the two emitters are in quadrature, |A|^2 = 2.
    CHECK(std::norm(left[0]) == doctest::Approx(2.0).epsilon(1e-12));
    ChainGeometry half({0.0, 0.5});
    const auto cancel = classical_output_amplitudes(half, sp, OutputDirection::left);
    // d = lambda/2: opposite phases, perfect cancellation.
    CHECK(std::norm(cancel[0]) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("mirror symmetry exchanges the two output directions") {
    PumpSpectrum sp({{1.0, 0.1}, {1.2, 0.3}});
    ChainGeometry geo({0.0, 0.3, 1.0});
    ChainGeometry mirrored({0.0, 0.7, 1.0});
    FockSpace space(3, 2);
    OscillatorParams osc;
    const FockStateVector s = basis_state(space, {1, 0, 1});
    const FockStateVector sm = basis_state(space, {1, 0, 1});
    const double left = state_dependent_intensity(s, geo, sp, osc, OutputDirection::left);
    const double right = state_dependent_intensity(sm, mirrored, sp, osc, OutputDirection::right);
    CHECK(left == doctest::Approx(right).epsilon(1e-10));
}

TEST_CASE("zeroth order reduces to the classical intensity for any state") {
    PumpSpectrum sp({{1.0, 0.1}});
    ChainGeometry geo({0.0, 0.5, 1.1});
    FockSpace space(3, 2);
    OscillatorParams osc;
    FieldOperatorOptions classical_only;
    classical_only.order = 0;
    const double ref = classical_output_intensity(geo, sp, OutputDirection::left);
    for (auto occ : {std::vector<std::size_t>{0, 0, 0}, {1, 1, 0}, {2, 0, 1}}) {
        const FockStateVector s = basis_state(space, occ);
        CHECK(state_dependent_intensity(s, geo, sp, osc, OutputDirection::left, classical_only) ==
              doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("density matrix overload agrees with the pure-state overload") {
    PumpSpectrum sp({{1.0, 0.1}});
    ChainGeometry geo({0.0, 0.5, 1.1});
    FockSpace space(3, 2);
    OscillatorParams osc;
    const FockStateVector s = basis_state(space, {0, 1, 1});
    DensityMatrix rho{space, s.amplitudes * s.amplitudes.adjoint()};
    for (auto dir : {OutputDirection::left, OutputDirection::right}) {
        CHECK(state_dependent_intensity(s, geo, sp, osc, dir) ==
              doctest::Approx(state_dependent_intensity(rho, geo, sp, osc, dir)).epsilon(1e-12));
    }
}

TEST_CASE("intensity operator is Hermitian positive semidefinite") {
    PumpSpectrum sp({{1.0, 0.1}});
    ChainGeometry geo({0.0, 0.5, 1.1});
    FockSpace space(3, 1);
    OscillatorParams osc;
    const Operator op = intensity_operator(geo, sp, osc, space, OutputDirection::right);
    CHECK((op - op.adjoint()).norm() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Operator> solver(op);
    CHECK(solver.eigenvalues().minCoeff() > -1e-12);
}

TEST_CASE("forward output ignores the chain state; backward output resolves it") {
    PumpSpectrum sp({{1.0, 0.1}});
    ChainGeometry geo({0.0, 1.0, 2.3});
    FockSpace space(3, 2);
    OscillatorParams osc;
    const FockStateVector a = basis_state(space, {1, 0, 0});
    const FockStateVector b = basis_state(space, {0, 1, 1});
    const double fa = state_dependent_intensity(a, geo, sp, osc, OutputDirection::left);
    const double fb = state_dependent_intensity(b, geo, sp, osc, OutputDirection::left);
    const double ba = state_dependent_intensity(a, geo, sp, osc, OutputDirection::right);
    const double bb = state_dependent_intensity(b, geo, sp, osc, OutputDirection::right);
    CHECK(std::abs(fa - fb) < 1e-10);
    CHECK(std::abs(ba - bb) > 1e-3);
}
