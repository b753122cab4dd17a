// fockspace.hpp — Truncated N-mode bosonic Fock space: states, ladder
// operators, coherent states, partial trace and von Neumann entropy.
//
// Basis ordering: mode 0 (leftmost particle) is the slowest-varying index,
// i.e. index = ((n_0*(c+1) + n_1)*(c+1) + n_2)*... with c the cutoff.

#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fibersim {

using Operator = Eigen::MatrixXcd;

class FockSpace {
  public:
    FockSpace(std::size_t n_modes, std::size_t cutoff);

    std::size_t n_modes() const { return n_modes_; }
    std::size_t cutoff() const { return cutoff_; }
    Eigen::Index dim() const { return dim_; }

    /// Occupation tuple for a basis index.
    std::vector<std::size_t> occupation(Eigen::Index index) const;
    /// Basis index for an occupation tuple (inverse of occupation()).
    Eigen::Index index(const std::vector<std::size_t>& occupation) const;

    bool operator==(const FockSpace& other) const {
        return n_modes_ == other.n_modes_ && cutoff_ == other.cutoff_;
    }

  private:
    std::size_t n_modes_;
    std::size_t cutoff_;
    Eigen::Index dim_;
};

struct FockStateVector {
    FockSpace space;
    Eigen::VectorXcd amplitudes;

    double norm() const { return amplitudes.norm(); }
    void normalize() { amplitudes /= amplitudes.norm(); }
};

/// Basis state |n_0 n_1 ... >.
FockStateVector basis_state(const FockSpace& space, const std::vector<std::size_t>& occupation);

/// Annihilation operator of `mode` in the truncated space.
Operator lowering_operator(const FockSpace& space, std::size_t mode);
Operator raising_operator(const FockSpace& space, std::size_t mode);
Operator number_operator(const FockSpace& space, std::size_t mode);
Operator total_number_operator(const FockSpace& space);

struct CoherentState {
    FockStateVector state;
    /// Norm lost to the cutoff before renormalization.
    double truncation_loss = 0.0;
};

/// Normalized product coherent state |alpha_0>|alpha_1>...; renormalized
/// after truncation at the cutoff.
CoherentState coherent_state(const FockSpace& space,
                             const std::vector<std::complex<double>>& amplitudes);

struct DensityMatrix {
    FockSpace space;
    Eigen::MatrixXcd matrix;
};

/// Reduced density matrix over the kept modes (0-based, ascending output
/// ordering follows the given keep list order after sorting).
DensityMatrix partial_trace(const FockStateVector& state, const std::vector<std::size_t>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& keep);

/// -tr(rho ln rho) in nats; eigenvalues in [-1e-10, 0] are clamped to zero.
double von_neumann_entropy(const DensityMatrix& rho);

/// State import/export as JSON:
/// { "n_modes": N, "cutoff": c, "amplitudes": [[re, im], ...] }.
std::string state_to_json(const FockStateVector& state);
FockStateVector state_from_json(const std::string& json_text);

}  // namespace fibersim
