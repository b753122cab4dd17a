// dynamics.hpp — Time evolution under Hermitian Hamiltonians via
// eigendecomposition, two-qubit gate extraction, closed-form coherent-state
// evolution and entanglement tracking. Times are in units of 1/omega_T.

#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fibersim/fockspace.hpp"
#include "fibersim/hamiltonian.hpp"
#include "fibersim/model.hpp"

namespace fibersim {

/// Exact propagator exp(-i H t) for a time-independent Hermitian H.
class Propagator {
  public:
    explicit Propagator(const Operator& hamiltonian, double hermiticity_tol = 1e-9);

    Eigen::VectorXcd apply(const Eigen::VectorXcd& state, double t) const;
    FockStateVector apply(const FockStateVector& state, double t) const;
    Operator matrix(double t) const;

  private:
    Eigen::VectorXd evals_;
    Eigen::MatrixXcd evecs_;
};

FockStateVector evolve(const FockStateVector& state, const Operator& hamiltonian, double t);

/// Closed single-excitation sector: exp(-i M t) * amplitudes.
Eigen::VectorXcd single_excitation_evolve(const ModeSpaceHamiltonian& m,
                                          const Eigen::VectorXcd& amplitudes, double t);

struct GateReport {
    std::string gate;          ///< best-matching named gate: "iSWAP", "SQiSW" or "custom"
    std::size_t mode_i = 0;
    std::size_t mode_j = 0;
    double time = 0.0;
    double theta = 0.0;        ///< beamsplitter angle g_ij * t
    double max_deviation = 0.0;  ///< entrywise vs the ideal gate at theta, phase-adjusted
    double fidelity = 0.0;       ///< global-phase-adjusted
    double leakage = 0.0;        ///< worst column norm loss out of the qubit subspace
};

/// Ideal beamsplitter gate on the qubit basis {|00>,|01>,|10>,|11>} at angle
/// theta; theta = pi/2 is the i-SWAP, theta = pi/4 the SQiSW.
Eigen::Matrix4cd ideal_beamsplitter_gate(double theta);

struct GateExtractionOptions {
    double isolation_tol = 1e-6;  ///< max allowed coupling of the pair to other modes
    double leakage_guard = 1e-6;
};

/// Restriction of the interaction-picture evolution (local oscillator phases
/// removed) to the qubit subspace of the pair (i,j), computed in the
/// qubit-sector truncation (cutoff 1).
std::pair<Eigen::Matrix4cd, GateReport> extract_two_qubit_gate(
    const ChainGeometry& geometry, const PumpSpectrum& spectrum, std::size_t mode_i,
    std::size_t mode_j, double t, const GateExtractionOptions& options = {});

/// Beamsplitter map on a pair of coherent amplitudes, generated by
/// exp(+i g t (a_1^dag a_2 + a_1 a_2^dag)):
/// (alpha, alpha') -> (alpha cos gt + i alpha' sin gt, alpha' cos gt + i alpha sin gt).
std::pair<std::complex<double>, std::complex<double>> coherent_closed_form(
    std::complex<double> alpha, std::complex<double> alpha_prime, double g, double t);

struct CoherentCrosscheck {
    double fidelity = 0.0;
    double truncation_loss = 0.0;
};

/// Overlap between the closed-form evolved coherent pair and the numerically
/// evolved truncated state. Throws when the truncation guard |alpha|^2*3 > cutoff
/// is violated.
CoherentCrosscheck coherent_evolution_crosscheck(std::complex<double> alpha,
                                                 std::complex<double> alpha_prime, double g,
                                                 double t, std::size_t cutoff);

struct EntropyTrace {
    std::vector<double> times;
    /// entropies[p][n] = entropy of bipartition p at times[n]
    std::vector<std::vector<double>> entropies;
    /// populations[m][n] = <n_m> at times[n]
    std::vector<std::vector<double>> populations;
};

EntropyTrace entanglement_trace(const FockStateVector& initial, const Operator& hamiltonian,
                                const std::vector<double>& times,
                                const std::vector<std::vector<std::size_t>>& bipartitions);

}  // namespace fibersim
