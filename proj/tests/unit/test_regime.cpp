#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fibersim/regime.hpp"

using namespace fibersim;

TEST_CASE("cesium preset feasibility numbers") {
    const PhysicalParams p = cesium_params();
    CHECK_NOTHROW(validate_physical_params(p));

    const IntensityReport ir = scattered_intensity(p);
    CHECK(ir.saturation_ok);
    CHECK(ir.intensity_per_saturation ==
          doctest::Approx(6.2e-4).epsilon(0.05));

    const LambDickeReport ld = check_lamb_dicke(p);
    // Required trap frequency scale ~1e5 1/s, read on a log axis.
    CHECK(std::abs(std::log10(ld.omega_trap_bound) - 5.0) < 0.1);

    const InteractionBoundReport ib = check_interaction_bound(p, 1e4);
    CHECK(ib.omega_k_bound < 1e6);
    CHECK(ib.omega_k_bound > 1e4);
    CHECK(ib.pass);
    CHECK(ib.margin == doctest::Approx(ib.omega_k_bound / 1e4));
}

TEST_CASE("excited state fraction follows the low-saturation formula") {
    PhysicalParams p = cesium_params();
    const double delta = p.detuning;
    const double expected = p.saturation / (2.0 * (1.0 + 4.0 * delta * delta));
    CHECK(excited_state_fraction(p) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("validation and saturation guards") {
    PhysicalParams p = cesium_params();
    p.detuning = 2.0;
    CHECK_THROWS_AS(validate_physical_params(p), std::invalid_argument);

    PhysicalParams hot = cesium_params();
    hot.detuning = 10.0;
    hot.saturation = 1000.0;  // rho_ee > 0.1
    CHECK_THROWS_AS(scattered_intensity(hot), std::domain_error);
}

TEST_CASE("interaction bound warns before failing") {
    const PhysicalParams p = cesium_params();
    const InteractionBoundReport ok = check_interaction_bound(p, p.omega_trap * 1e-3);
    CHECK(ok.pass);
    const InteractionBoundReport tight =
        check_interaction_bound(p, check_interaction_bound(p, 1.0).omega_k_bound / 5.0);
    CHECK_FALSE(tight.pass);
    CHECK(tight.warn);
    const InteractionBoundReport bad =
        check_interaction_bound(p, check_interaction_bound(p, 1.0).omega_k_bound);
    CHECK_FALSE(bad.pass);
    CHECK_FALSE(bad.warn);
}

TEST_CASE("report JSON contains all three sections") {
    const std::string j = regime_report_json(cesium_params(), 1e4);
    CHECK(j.find("scattered_intensity") != std::string::npos);
    CHECK(j.find("lamb_dicke") != std::string::npos);
    CHECK(j.find("interaction_bound") != std::string::npos);
}
