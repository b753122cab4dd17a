// coulombmap.hpp — Linearized Coulomb target systems (line, planar, arbitrary
// interaction graphs), the inverse-design linear systems that reproduce them
// with a pump spectrum, and emulated-vs-target spectrum comparison.
//
// Target-side conventions: ion positions and the target oscillator length
// delta0' are measured in units of the reference distance D (= |r_2 - r_1| in
// typical presets); target energies are in units of the target trap frequency
// omega_T'. The single coupling scale is
//   omegatilde = charge_scale * delta0'^2 / omega_T',
// with charge_scale = q^2 / (2 pi eps0 hbar D^3) expressed in trap-frequency
// units, so omegatilde scales as 1/D^3 at fixed charge and delta0'.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fibersim/fockspace.hpp"
#include "fibersim/hamiltonian.hpp"
#include "fibersim/model.hpp"

namespace fibersim {

struct TargetCoulombSystem {
    /// N x N_D ion positions, D units; N_D in {1, 2, 3}.
    Eigen::MatrixXd ion_positions;
    double charge_scale = 1.0;
    double omega_T_prime = 1.0;
    double delta0_prime = 0.1;
    /// Symmetric pair-interaction mask; empty means all pairs interact.
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> mask;

    std::size_t n_ions() const { return static_cast<std::size_t>(ion_positions.rows()); }
    std::size_t n_dims() const { return static_cast<std::size_t>(ion_positions.cols()); }
    std::size_t n_slots() const { return n_ions() * n_dims(); }
    double omegatilde() const { return charge_scale * delta0_prime * delta0_prime / omega_T_prime; }
    bool pair_enabled(std::size_t i, std::size_t j) const;
    /// Oscillator slot index of ion i, dimension a: the N x-slots come first,
    /// then the N y-slots, then (3D) the N z-slots.
    std::size_t slot(std::size_t i, std::size_t a) const { return a * n_ions() + i; }

    void validate() const;
};

/// JSON round trip:
/// { "ions": [[x, y], ...], "charge_scale": f, "omega_T_prime": f,
///   "delta0_prime": f, "mask": [[bool]] } (mask optional).
TargetCoulombSystem parse_target_system(const std::string& json_text);
TargetCoulombSystem load_target_system(const std::string& path);
std::string target_system_to_json(const TargetCoulombSystem& target);

/// Slot-space matrix of the number-conserving linearized Hamiltonian,
/// dimension N*N_D, in omega_T' units: omega_T'(=1) + positive diagonal
/// shifts, pair couplings from the Hessian of the pairwise 1/r potential.
/// Masked pairs contribute neither couplings nor shifts.
Eigen::MatrixXd coulomb_mode_matrix(const TargetCoulombSystem& target);

ModeSpaceHamiltonian linearized_coulomb_hamiltonian(const TargetCoulombSystem& target);

/// Number-conserving part as a Fock operator on n_slots modes.
Operator coulomb_fock_hamiltonian(const TargetCoulombSystem& target, const FockSpace& space);

/// Non-number-conserving remainder (displacement + pair-squeezing terms) of
/// the 1D linearization; excluded from spectra. 1D targets only.
Operator coulomb_fast_terms(const TargetCoulombSystem& target, const FockSpace& space);

struct DesignResult {
    PumpSpectrum spectrum;           ///< solved spectrum, omega in omega_T units
    std::vector<double> wavenumbers; ///< k_l / k0
    std::vector<double> ratios;      ///< Omega_l / omegatilde
    double residual = 0.0;           ///< max-norm residual, omegatilde units
    bool all_nonnegative = true;
    double delta_k = 0.0;            ///< frequency spacing actually used
};

struct LineDesignOptions {
    double delta_k = 0.7;     ///< k0 units
    double delta0 = 0.05;     ///< fiber oscillator length, lambda0 units
    bool include_cos_rows = true;  ///< also zero out the displacement terms
};

/// Exact (square) design solve for a 1D target: one sine row per distinct
/// fiber distance matching the pair coupling, plus one cosine row per
/// distance cancelling the displacement term, L = 2 x #distances unknowns on
/// the grid k_l = k0 + l delta_k.
DesignResult design_line_spectrum(const TargetCoulombSystem& target, const ChainGeometry& fiber,
                                  const LineDesignOptions& options = {});

struct PlanarDesignOptions {
    double delta_k = 0.33;        ///< k0 units
    std::size_t n_components = 14;
    /// When the solve at delta_k leaves a residual above this bound, scan the
    /// spacing grid below and keep the best feasible spacing.
    double rescan_threshold = 1e-2;
    double scan_min = 0.1, scan_max = 1.0, scan_step = 0.05;
};

/// Least-squares design for a planar (or 3D) target: one row per unordered
/// oscillator-slot pair equating sum_l Omega_l sin(k_l d_pq) to the target
/// slot coupling (zero for masked pairs). Solved unconstrained first; if any
/// Omega_l < 0, re-solved with nonnegativity constraints.
DesignResult design_planar_spectrum(const TargetCoulombSystem& target, const ChainGeometry& fiber,
                                    const PlanarDesignOptions& options = {});

struct SpectrumComparison {
    std::vector<double> scales;          ///< D / D_ref per sweep point
    std::vector<std::vector<double>> target_sector1, emulated_sector1;
    std::vector<std::vector<double>> target_sector2, emulated_sector2;
    double max_rel_sector1 = 0.0;
    double max_rel_sector2 = 0.0;
};

/// Sector-1 and sector-2 eigenenergies of target and emulated chain across a
/// sweep of the reference distance (omegatilde ~ 1/D^3, spectrum rescaled
/// accordingly). `scales` are D/D_ref factors; empty means {1}.
SpectrumComparison emulate_and_compare(const TargetCoulombSystem& target,
                                       const ChainGeometry& fiber, const DesignResult& design,
                                       const std::vector<double>& scales = {});

/// min ||A x - b|| subject to x >= 0 (Lawson-Hanson active set).
Eigen::VectorXd nonnegative_least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

}  // namespace fibersim
