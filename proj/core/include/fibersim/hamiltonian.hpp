// hamiltonian.hpp — Quantized chain Hamiltonians: the full linearized form,
// the number-conserving (rotating-wave) form, the coupling matrix g_ij and
// the N x N mode-space reduction used for sector spectra.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "fibersim/fockspace.hpp"
#include "fibersim/model.hpp"

namespace fibersim {

/// g_ij = sum_k Omega_k sin(2 pi k d_ij): real symmetric, zero diagonal.
/// Convention: g_ij is the coefficient of a_j^dag a_i for each ordered pair,
/// so the Hermitian coupling of the unordered pair (i,j) is exactly
/// g_ij (a_i^dag a_j + a_j^dag a_i).
Eigen::MatrixXd coupling_matrix(const ChainGeometry& geometry, const PumpSpectrum& spectrum);

/// Shifted trap frequencies omega~_i = omega_T - sum_j g_ij.
Eigen::VectorXd shifted_frequencies(const ChainGeometry& geometry, const PumpSpectrum& spectrum,
                                    double omega_trap = 1.0);

/// N x N Hermitian matrix M = diag(omega~) + g. Its eigenvalues are the
/// single-excitation energies; n-excitation energies follow combinatorially.
class ModeSpaceHamiltonian {
  public:
    explicit ModeSpaceHamiltonian(Eigen::MatrixXd m);

    const Eigen::MatrixXd& matrix() const { return m_; }
    std::size_t n_modes() const { return static_cast<std::size_t>(m_.rows()); }
    const Eigen::VectorXd& eigenvalues() const { return evals_; }
    const Eigen::MatrixXd& eigenvectors() const { return evecs_; }

  private:
    Eigen::MatrixXd m_;
    Eigen::VectorXd evals_;
    Eigen::MatrixXd evecs_;
};

ModeSpaceHamiltonian mode_space_hamiltonian(const ChainGeometry& geometry,
                                            const PumpSpectrum& spectrum,
                                            double omega_trap = 1.0);

/// Sector spectrum: n_excitations = 1 gives the eigenvalues of M, sorted;
/// n_excitations = 2 gives all pairwise sums lambda_p + lambda_q, p <= q.
std::vector<double> sector_eigenenergies(const ModeSpaceHamiltonian& m, int n_excitations);

/// Number-conserving Hamiltonian sum_i omega~_i n_i + sum_{i,j} g_ij a_j^dag a_i
/// on the truncated Fock space.
Operator rwa_hamiltonian(const ChainGeometry& geometry, const PumpSpectrum& spectrum,
                         const FockSpace& space, double omega_trap = 1.0);

/// Full linearized Hamiltonian. With `include_fast_terms` the displacement
/// terms (amplitude epsilon_k cos) and the pair-squeezing terms
/// (Omega_k sin / 2) are added; they change total excitation number by
/// +-1 or +-2 and are excluded from time evolution by default.
Operator full_hamiltonian(const ChainGeometry& geometry, const PumpSpectrum& spectrum,
                          const OscillatorParams& oscillator, const FockSpace& space,
                          bool include_fast_terms);

/// Debug export: dense complex matrix as a JSON array of rows, each entry a
/// [re, im] pair.
std::string operator_to_json(const Operator& op);

}  // namespace fibersim
