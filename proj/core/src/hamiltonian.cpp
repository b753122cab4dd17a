#include "fibersim/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fibersim {

Eigen::MatrixXd coupling_matrix(const ChainGeometry& geometry, const PumpSpectrum& spectrum) {
    const auto n = static_cast<Eigen::Index>(geometry.n_particles());
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double d = geometry.pair_distance(static_cast<std::size_t>(i),
                                                    static_cast<std::size_t>(j));
            double gij = 0.0;
            for (const auto& c : spectrum.components()) gij += c.omega * std::sin(kTwoPi * c.k * d);
            g(i, j) = gij;
            g(j, i) = gij;
        }
    }
    return g;
}

Eigen::VectorXd shifted_frequencies(const ChainGeometry& geometry, const PumpSpectrum& spectrum,
                                    double omega_trap) {
    const Eigen::MatrixXd g = coupling_matrix(geometry, spectrum);
    return Eigen::VectorXd::Constant(g.rows(), omega_trap) - g.rowwise().sum();
}

ModeSpaceHamiltonian::ModeSpaceHamiltonian(Eigen::MatrixXd m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw std::invalid_argument("mode-space matrix must be square");
    if ((m_ - m_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + m_.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("mode-space matrix must be symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m_);
    evals_ = es.eigenvalues();
    evecs_ = es.eigenvectors();
}

ModeSpaceHamiltonian mode_space_hamiltonian(const ChainGeometry& geometry,
                                            const PumpSpectrum& spectrum, double omega_trap) {
    Eigen::MatrixXd m = coupling_matrix(geometry, spectrum);
    m += shifted_frequencies(geometry, spectrum, omega_trap).asDiagonal();
    return ModeSpaceHamiltonian(std::move(m));
}

std::vector<double> sector_eigenenergies(const ModeSpaceHamiltonian& m, int n_excitations) {
    const auto& ev = m.eigenvalues();
    std::vector<double> energies;
    if (n_excitations == 1) {
        energies.assign(ev.data(), ev.data() + ev.size());
    } else if (n_excitations == 2) {
        for (Eigen::Index p = 0; p < ev.size(); ++p)
            for (Eigen::Index q = p; q < ev.size(); ++q) energies.push_back(ev(p) + ev(q));
    } else {
        throw std::invalid_argument("sector_eigenenergies supports 1 or 2 excitations");
    }
    std::sort(energies.begin(), energies.end());
    return energies;
}

Operator rwa_hamiltonian(const ChainGeometry& geometry, const PumpSpectrum& spectrum,
                         const FockSpace& space, double omega_trap) {
    const std::size_t n = geometry.n_particles();
    if (space.n_modes() != n)
        throw std::invalid_argument("Fock space mode count does not match chain size");
    const Eigen::MatrixXd g = coupling_matrix(geometry, spectrum);
    const Eigen::VectorXd omega = shifted_frequencies(geometry, spectrum, omega_trap);

    std::vector<Operator> a(n);
    for (std::size_t m = 0; m < n; ++m) a[m] = lowering_operator(space, m);

    Operator h = Operator::Zero(space.dim(), space.dim());
    for (std::size_t i = 0; i < n; ++i) h += omega(static_cast<Eigen::Index>(i)) * (a[i].adjoint() * a[i]);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double gij = g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            if (gij == 0.0) continue;
            Operator hop = a[i].adjoint() * a[j];
            h += gij * (hop + hop.adjoint());
        }
    }
    return h;
}

Operator full_hamiltonian(const ChainGeometry& geometry, const PumpSpectrum& spectrum,
                          const OscillatorParams& oscillator, const FockSpace& space,
                          bool include_fast_terms) {
    Operator h = rwa_hamiltonian(geometry, spectrum, space, oscillator.omega_trap);
    if (!include_fast_terms) return h;

    const std::size_t n = geometry.n_particles();
    std::vector<Operator> a(n);
    for (std::size_t m = 0; m < n; ++m) a[m] = lowering_operator(space, m);

    // Displacement terms: epsilon_k cos(k d_ij) (a_j + a_j^dag - a_i - a_i^dag), i < j.
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            const double d = geometry.pair_distance(i, j);
            double amp = 0.0;
            for (std::size_t c = 0; c < spectrum.size(); ++c)
                amp += spectrum.epsilon(c, oscillator.delta0) *
                       std::cos(kTwoPi * spectrum[c].k * d);
            if (amp == 0.0) continue;
            Operator disp = a[j] + a[j].adjoint() - a[i] - a[i].adjoint();
            h += amp * disp;
        }
    }
    // Squeezing/pair terms: -(Omega_k/2) sin(k d_ij) (a_j^2 + a_j^dag^2 - a_j a_i - a_j^dag a_i^dag).
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            if (i == j) continue;
            const double d = geometry.pair_distance(i, j);
            double amp = 0.0;
            for (const auto& c : spectrum.components())
                amp += 0.5 * c.omega * std::sin(kTwoPi * c.k * d);
            if (amp == 0.0) continue;
            Operator term = a[j] * a[j] + a[j].adjoint() * a[j].adjoint() - a[j] * a[i] -
                            a[j].adjoint() * a[i].adjoint();
            h -= amp * term;
        }
    }
    return h;
}

std::string operator_to_json(const Operator& op) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < op.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < op.cols(); ++c)
            row.push_back({op(r, c).real(), op(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows.dump();
}

}  // namespace fibersim
