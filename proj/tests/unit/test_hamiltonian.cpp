#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "fibersim/fockspace.hpp"
#include "fibersim/hamiltonian.hpp"

using namespace fibersim;

namespace {

// Eigenvalues of the Fock Hamiltonian restricted to a fixed total excitation
// number; independent oracle for the mode-space sector spectra.
std::vector<double> fock_sector_eigenvalues(const Operator& h, const FockSpace& space,
                                            std::size_t n_excitations) {
    std::vector<Eigen::Index> members;
    for (Eigen::Index i = 0; i < space.dim(); ++i) {
        const auto occ = space.occupation(i);
        std::size_t total = 0;
        for (std::size_t n : occ) total += n;
        if (total == n_excitations) members.push_back(i);
    }
    Operator block(members.size(), members.size());
    for (std::size_t r = 0; r < members.size(); ++r)
        for (std::size_t c = 0; c < members.size(); ++c)
            block(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                h(members[r], members[c]);
    Eigen::SelfAdjointEigenSolver<Operator> solver(block);
    std::vector<double> out(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + solver.eigenvalues().size());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("coupling matrix values and symmetry") {
    ChainGeometry geo({0.0, 0.3, 1.0});
    PumpSpectrum sp({{1.0, 0.5}, {1.4, 0.2}});
    const Eigen::MatrixXd g = coupling_matrix(geo, sp);
    CHECK((g - g.transpose()).norm() == doctest::Approx(0.0));
    CHECK(g.diagonal().norm() == doctest::Approx(0.0));
    const double expected =
        0.5 * std::sin(kTwoPi * 0.3) + 0.2 * std::sin(kTwoPi * 1.4 * 0.3);
    CHECK(g(0, 1) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("quarter-wavelength spacing gives maximal coupling") {
    ChainGeometry geo({0.0, 0.25});
    PumpSpectrum sp({{1.0, 0.7}});
    const Eigen::MatrixXd g = coupling_matrix(geo, sp);
    CHECK(g(0, 1) == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("shifted frequencies subtract the coupling row sums") {
    ChainGeometry geo({0.0, 0.3, 1.0});
    PumpSpectrum sp({{1.0, 0.5}, {1.4, 0.2}});
    const Eigen::MatrixXd g = coupling_matrix(geo, sp);
    const Eigen::VectorXd w = shifted_frequencies(geo, sp, 2.0);
    for (Eigen::Index i = 0; i < 3; ++i)
        CHECK(w(i) == doctest::Approx(2.0 - g.row(i).sum()).epsilon(1e-14));
}

TEST_CASE("sector-2 energies are pairwise sums of sector-1 energies") {
    ChainGeometry geo({0.0, 0.3, 1.0});
    PumpSpectrum sp({{1.0, 0.5}, {1.4, 0.2}});
    const ModeSpaceHamiltonian m = mode_space_hamiltonian(geo, sp);
    const auto e1 = sector_eigenenergies(m, 1);
    auto e2 = sector_eigenenergies(m, 2);
    std::vector<double> sums;
    for (std::size_t p = 0; p < e1.size(); ++p)
        for (std::size_t q = p; q < e1.size(); ++q) sums.push_back(e1[p] + e1[q]);
    std::sort(sums.begin(), sums.end());
    REQUIRE(e2.size() == sums.size());
    for (std::size_t i = 0; i < sums.size(); ++i)
        CHECK(e2[i] == doctest::Approx(sums[i]).epsilon(1e-12));
}

TEST_CASE("mode-space spectra match the Fock-space restriction") {
    ChainGeometry geo({0.0, 0.3, 1.0});
    PumpSpectrum sp({{1.0, 0.5}, {1.4, 0.2}});
    FockSpace space(3, 2);
    const Operator h = rwa_hamiltonian(geo, sp, space);
    const ModeSpaceHamiltonian m = mode_space_hamiltonian(geo, sp);
    for (int sector : {1, 2}) {
        const auto reduced = sector_eigenenergies(m, sector);
        const auto fock = fock_sector_eigenvalues(h, space, static_cast<std::size_t>(sector));
        REQUIRE(reduced.size() == fock.size());
        for (std::size_t i = 0; i < fock.size(); ++i)
            CHECK(reduced[i] == doctest::Approx(fock[i]).epsilon(1e-9));
    }
}

TEST_CASE("zero pump spectrum leaves all sector energies at the trap frequency") {
    ChainGeometry geo({0.0, 0.3, 1.0});
    PumpSpectrum sp;
    const ModeSpaceHamiltonian m = mode_space_hamiltonian(geo, sp, 1.0);
    for (double e : sector_eigenenergies(m, 1)) CHECK(e == doctest::Approx(1.0));
    for (double e : sector_eigenenergies(m, 2)) CHECK(e == doctest::Approx(2.0));
}

TEST_CASE("matrix JSON export writes real/imaginary pairs per row") {
    Operator op(1, 2);
    op(0, 0) = {1.0, 0.0};
    op(0, 1) = {0.0, -2.0};
    CHECK(operator_to_json(op) == "[[[1.0,0.0],[0.0,-2.0]]]");
}

TEST_CASE("number-conserving Hamiltonian commutes with total number") {
    ChainGeometry geo({0.0, 0.4});
    PumpSpectrum sp({{1.0, 0.3}});
    FockSpace space(2, 3);
    const Operator h = rwa_hamiltonian(geo, sp, space);
    const Operator n = total_number_operator(space);
    CHECK((h * n - n * h).norm() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("fast terms break number conservation but stay Hermitian") {
    ChainGeometry geo({0.0, 0.4});
    PumpSpectrum sp({{1.0, 0.3}});
    FockSpace space(2, 3);
    const OscillatorParams osc;
    const Operator h = full_hamiltonian(geo, sp, osc, space, true);
    CHECK((h - h.adjoint()).norm() == doctest::Approx(0.0).epsilon(1e-12));
    const Operator n = total_number_operator(space);
    CHECK((h * n - n * h).norm() > 1e-3);
    const Operator slow = full_hamiltonian(geo, sp, osc, space, false);
    CHECK((slow - rwa_hamiltonian(geo, sp, space)).norm() ==
          doctest::Approx(0.0).epsilon(1e-12));
}
