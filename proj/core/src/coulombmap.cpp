#include "fibersim/coulombmap.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <nlohmann/json.hpp>

namespace fibersim {

bool TargetCoulombSystem::pair_enabled(std::size_t i, std::size_t j) const {
    if (i == j) return false;
    if (mask.size() == 0) return true;
    return mask(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
}

void TargetCoulombSystem::validate() const {
    const auto n = ion_positions.rows();
    const auto d = ion_positions.cols();
    if (n < 2) throw std::invalid_argument("target needs at least two ions");
    if (d < 1 || d > 3) throw std::invalid_argument("target dimension must be 1, 2 or 3");
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            if ((ion_positions.row(i) - ion_positions.row(j)).norm() < 1e-12)
                throw std::invalid_argument("coincident ion positions");
    if (mask.size() != 0) {
        if (mask.rows() != n || mask.cols() != n)
            throw std::invalid_argument("mask shape does not match ion count");
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                if (mask(i, j) != mask(j, i))
                    throw std::invalid_argument("mask must be symmetric");
    }
    if (delta0_prime <= 0.0) throw std::invalid_argument("delta0_prime must be positive");
    if (omega_T_prime <= 0.0) throw std::invalid_argument("omega_T_prime must be positive");
    if (charge_scale < 0.0) throw std::invalid_argument("charge_scale must be nonnegative");
}

namespace {

struct SlotCouplings {
    Eigen::MatrixXd couplings;  // symmetric, omegatilde units, zero diagonal
    Eigen::VectorXd shifts;     // omegatilde units
};

// Pair couplings and local shifts from the Hessian of the pairwise 1/r
// potential, in omegatilde units: c_ab = (3 R_a R_b - delta_ab R^2) / (2 R^5).
SlotCouplings slot_couplings(const TargetCoulombSystem& target) {
    target.validate();
    const std::size_t n = target.n_ions();
    const std::size_t nd = target.n_dims();
    const auto slots = static_cast<Eigen::Index>(target.n_slots());
    SlotCouplings out{Eigen::MatrixXd::Zero(slots, slots), Eigen::VectorXd::Zero(slots)};

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!target.pair_enabled(i, j)) continue;
            const Eigen::VectorXd r = (target.ion_positions.row(j) - target.ion_positions.row(i))
                                          .transpose();
            const double rn = r.norm();
            const double r5 = rn * rn * rn * rn * rn;
            for (std::size_t a = 0; a < nd; ++a) {
                for (std::size_t b = 0; b < nd; ++b) {
                    const double c = (3.0 * r(static_cast<Eigen::Index>(a)) *
                                          r(static_cast<Eigen::Index>(b)) -
                                      (a == b ? rn * rn : 0.0)) /
                                     (2.0 * r5);
                    const auto p = static_cast<Eigen::Index>(target.slot(i, a));
                    const auto q = static_cast<Eigen::Index>(target.slot(j, b));
                    out.couplings(p, q) -= c;
                    out.couplings(q, p) -= c;
                    if (a < b) {
                        const auto ia = static_cast<Eigen::Index>(target.slot(i, a));
                        const auto ib = static_cast<Eigen::Index>(target.slot(i, b));
                        const auto ja = static_cast<Eigen::Index>(target.slot(j, a));
                        const auto jb = static_cast<Eigen::Index>(target.slot(j, b));
                        out.couplings(ia, ib) += c;
                        out.couplings(ib, ia) += c;
                        out.couplings(ja, jb) += c;
                        out.couplings(jb, ja) += c;
                    }
                    if (a == b) {
                        out.shifts(p) += c;
                        out.shifts(q) += c;
                    }
                }
            }
        }
    }
    return out;
}

std::vector<double> grid_wavenumbers(std::size_t l_count, double delta_k) {
    std::vector<double> ks(l_count);
    for (std::size_t l = 0; l < l_count; ++l) ks[l] = 1.0 + static_cast<double>(l) * delta_k;
    return ks;
}

DesignResult finalize_design(std::vector<double> ks, const Eigen::VectorXd& ratios,
                             const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                             double omegatilde, double delta_k) {
    DesignResult out;
    out.wavenumbers = std::move(ks);
    out.ratios.assign(ratios.data(), ratios.data() + ratios.size());
    out.residual = (a * ratios - b).cwiseAbs().maxCoeff();
    out.all_nonnegative = ratios.minCoeff() >= -1e-12 * (1.0 + ratios.cwiseAbs().maxCoeff());
    out.delta_k = delta_k;
    std::vector<SpectralComponent> comps;
    for (std::size_t l = 0; l < out.wavenumbers.size(); ++l)
        comps.push_back({out.wavenumbers[l], std::max(0.0, out.ratios[l]) * omegatilde});
    out.spectrum = PumpSpectrum(std::move(comps));
    return out;
}

}  // namespace

Eigen::MatrixXd coulomb_mode_matrix(const TargetCoulombSystem& target) {
    const SlotCouplings sc = slot_couplings(target);
    Eigen::MatrixXd m = target.omegatilde() * sc.couplings;
    m.diagonal() = Eigen::VectorXd::Ones(m.rows()) + target.omegatilde() * sc.shifts;
    return m;
}

ModeSpaceHamiltonian linearized_coulomb_hamiltonian(const TargetCoulombSystem& target) {
    return ModeSpaceHamiltonian(coulomb_mode_matrix(target));
}

Operator coulomb_fock_hamiltonian(const TargetCoulombSystem& target, const FockSpace& space) {
    const Eigen::MatrixXd m = coulomb_mode_matrix(target);
    if (space.n_modes() != target.n_slots())
        throw std::invalid_argument("Fock space mode count does not match slot count");
    std::vector<Operator> a(target.n_slots());
    for (std::size_t p = 0; p < target.n_slots(); ++p) a[p] = lowering_operator(space, p);
    Operator h = Operator::Zero(space.dim(), space.dim());
    for (Eigen::Index p = 0; p < m.rows(); ++p)
        h += m(p, p) * (a[static_cast<std::size_t>(p)].adjoint() * a[static_cast<std::size_t>(p)]);
    for (Eigen::Index p = 0; p < m.rows(); ++p) {
        for (Eigen::Index q = p + 1; q < m.cols(); ++q) {
            if (m(p, q) == 0.0) continue;
            Operator hop = a[static_cast<std::size_t>(p)].adjoint() * a[static_cast<std::size_t>(q)];
            h += m(p, q) * (hop + hop.adjoint());
        }
    }
    return h;
}

Operator coulomb_fast_terms(const TargetCoulombSystem& target, const FockSpace& space) {
    target.validate();
    if (target.n_dims() != 1)
        throw std::invalid_argument("fast terms are implemented for 1D targets only");
    const std::size_t n = target.n_ions();
    if (space.n_modes() != n)
        throw std::invalid_argument("Fock space mode count does not match ion count");
    const double ot = target.omegatilde();
    std::vector<Operator> a(n);
    for (std::size_t p = 0; p < n; ++p) a[p] = lowering_operator(space, p);

    Operator h = Operator::Zero(space.dim(), space.dim());
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (!target.pair_enabled(i, j)) continue;
            const double d = std::abs(target.ion_positions(static_cast<Eigen::Index>(j), 0) -
                                      target.ion_positions(static_cast<Eigen::Index>(i), 0));
            const double amp = -ot / (2.0 * target.delta0_prime * d * d);
            h += amp * (a[j] + a[j].adjoint() - a[i] - a[i].adjoint());
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            if (i == j || !target.pair_enabled(i, j)) continue;
            const double d = std::abs(target.ion_positions(static_cast<Eigen::Index>(j), 0) -
                                      target.ion_positions(static_cast<Eigen::Index>(i), 0));
            const double amp = ot / (2.0 * d * d * d);
            h += amp * (a[j] * a[j] + a[j].adjoint() * a[j].adjoint() - a[j] * a[i] -
                        a[j].adjoint() * a[i].adjoint());
        }
    }
    return h;
}

DesignResult design_line_spectrum(const TargetCoulombSystem& target, const ChainGeometry& fiber,
                                  const LineDesignOptions& options) {
    target.validate();
    if (target.n_dims() != 1) throw std::invalid_argument("line design needs a 1D target");
    const std::size_t n = target.n_ions();
    if (fiber.n_particles() != n)
        throw std::invalid_argument("fiber must provide one trap per ion");
    const SlotCouplings sc = slot_couplings(target);

    // Distance classes: each distinct fiber distance yields one sine row
    // (pair coupling) and, optionally, one cosine row (displacement
    // cancellation); pairs sharing a fiber distance must share targets.
    struct Row {
        double d;         // fiber distance, lambda0 units
        double b_sin;     // target coupling, omegatilde units
        double b_cos;     // displacement RHS, omegatilde units
    };
    std::vector<Row> classes;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            Row row;
            row.d = fiber.pair_distance(i, j);
            row.b_sin = sc.couplings(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            if (target.pair_enabled(i, j)) {
                const double dij =
                    std::abs(target.ion_positions(static_cast<Eigen::Index>(j), 0) -
                             target.ion_positions(static_cast<Eigen::Index>(i), 0));
                row.b_cos = 1.0 / (2.0 * dij * dij * target.delta0_prime);
            } else {
                row.b_cos = 0.0;
            }
            bool merged = false;
            for (const auto& seen : classes) {
                if (std::abs(seen.d - row.d) > 1e-12) continue;
                if (std::abs(seen.b_sin - row.b_sin) > 1e-12 ||
                    std::abs(seen.b_cos - row.b_cos) > 1e-12)
                    throw std::invalid_argument(
                        "pairs at equal fiber distance need equal targets");
                merged = true;
                break;
            }
            if (!merged) classes.push_back(row);
        }
    }

    const std::size_t rows_per_class = options.include_cos_rows ? 2 : 1;
    const std::size_t l_count = rows_per_class * classes.size();
    const auto ks = grid_wavenumbers(l_count, options.delta_k);

    Eigen::MatrixXd a(static_cast<Eigen::Index>(l_count), static_cast<Eigen::Index>(l_count));
    Eigen::VectorXd b(static_cast<Eigen::Index>(l_count));
    for (std::size_t c = 0; c < classes.size(); ++c) {
        for (std::size_t l = 0; l < l_count; ++l) {
            const double arg = kTwoPi * ks[l] * classes[c].d;
            a(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(l)) = std::sin(arg);
            if (options.include_cos_rows)
                a(static_cast<Eigen::Index>(classes.size() + c), static_cast<Eigen::Index>(l)) =
                    -std::cos(arg) / (kTwoPi * ks[l] * options.delta0);
        }
        b(static_cast<Eigen::Index>(c)) = classes[c].b_sin;
        if (options.include_cos_rows)
            b(static_cast<Eigen::Index>(classes.size() + c)) = classes[c].b_cos;
    }

    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (!lu.isInvertible())
        throw std::runtime_error("design system is singular; change the frequency spacing");
    const Eigen::VectorXd ratios = lu.solve(b);
    return finalize_design(ks, ratios, a, b, target.omegatilde(), options.delta_k);
}

Eigen::VectorXd nonnegative_least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
    const Eigen::Index nvar = a.cols();
    Eigen::VectorXd x = Eigen::VectorXd::Zero(nvar);
    std::vector<bool> passive(static_cast<std::size_t>(nvar), false);
    const double tol = 1e-12 * a.cwiseAbs().maxCoeff() * b.cwiseAbs().maxCoeff();

    for (int outer = 0; outer < 30 * static_cast<int>(nvar); ++outer) {
        const Eigen::VectorXd w = a.transpose() * (b - a * x);
        Eigen::Index best = -1;
        double best_w = tol;
        for (Eigen::Index i = 0; i < nvar; ++i) {
            if (passive[static_cast<std::size_t>(i)]) continue;
            if (w(i) > best_w) {
                best_w = w(i);
                best = i;
            }
        }
        if (best < 0) break;
        passive[static_cast<std::size_t>(best)] = true;

        for (int inner = 0; inner < 30 * static_cast<int>(nvar); ++inner) {
            std::vector<Eigen::Index> idx;
            for (Eigen::Index i = 0; i < nvar; ++i)
                if (passive[static_cast<std::size_t>(i)]) idx.push_back(i);
            Eigen::MatrixXd ap(a.rows(), static_cast<Eigen::Index>(idx.size()));
            for (std::size_t c = 0; c < idx.size(); ++c) ap.col(static_cast<Eigen::Index>(c)) = a.col(idx[c]);
            const Eigen::VectorXd zp = ap.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);

            bool feasible = true;
            for (Eigen::Index c = 0; c < zp.size(); ++c)
                if (zp(c) <= 0.0) feasible = false;
            if (feasible) {
                x.setZero();
                for (std::size_t c = 0; c < idx.size(); ++c) x(idx[c]) = zp(static_cast<Eigen::Index>(c));
                break;
            }
            // Step toward zp as far as feasibility allows; drop hit variables.
            double alpha = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < idx.size(); ++c) {
                const double z = zp(static_cast<Eigen::Index>(c));
                if (z > 0.0) continue;
                const double xi = x(idx[c]);
                alpha = std::min(alpha, xi / (xi - z));
            }
            for (std::size_t c = 0; c < idx.size(); ++c) {
                const double z = zp(static_cast<Eigen::Index>(c));
                x(idx[c]) += alpha * (z - x(idx[c]));
                if (x(idx[c]) <= 1e-11) {
                    x(idx[c]) = 0.0;
                    passive[static_cast<std::size_t>(idx[c])] = false;
                }
            }
        }
    }
    return x;
}

namespace {

DesignResult planar_solve_at(const Eigen::MatrixXd& dists, const Eigen::MatrixXd& couplings,
                             double omegatilde, double delta_k, std::size_t l_count) {
    const Eigen::Index slots = dists.rows();
    const Eigen::Index nrows = slots * (slots - 1) / 2;
    const auto ks = grid_wavenumbers(l_count, delta_k);

    Eigen::MatrixXd a(nrows, static_cast<Eigen::Index>(l_count));
    Eigen::VectorXd b(nrows);
    Eigen::Index r = 0;
    for (Eigen::Index p = 0; p < slots; ++p) {
        for (Eigen::Index q = p + 1; q < slots; ++q, ++r) {
            for (std::size_t l = 0; l < l_count; ++l)
                a(r, static_cast<Eigen::Index>(l)) = std::sin(kTwoPi * ks[l] * dists(p, q));
            b(r) = couplings(p, q);
        }
    }

    Eigen::VectorXd ratios = a.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
    if (ratios.minCoeff() < -1e-12 * (1.0 + ratios.cwiseAbs().maxCoeff()))
        ratios = nonnegative_least_squares(a, b);
    return finalize_design(ks, ratios, a, b, omegatilde, delta_k);
}

}  // namespace

DesignResult design_planar_spectrum(const TargetCoulombSystem& target, const ChainGeometry& fiber,
                                    const PlanarDesignOptions& options) {
    target.validate();
    const auto slots = static_cast<Eigen::Index>(target.n_slots());
    if (static_cast<Eigen::Index>(fiber.n_particles()) != slots)
        throw std::invalid_argument("fiber must provide one trap per oscillator slot");
    const SlotCouplings sc = slot_couplings(target);

    Eigen::MatrixXd dists(slots, slots);
    for (Eigen::Index p = 0; p < slots; ++p)
        for (Eigen::Index q = 0; q < slots; ++q)
            dists(p, q) = fiber.pair_distance(static_cast<std::size_t>(p),
                                              static_cast<std::size_t>(q));

    DesignResult best = planar_solve_at(dists, sc.couplings, target.omegatilde(),
                                        options.delta_k, options.n_components);
    const double bscale = sc.couplings.cwiseAbs().maxCoeff();
    if (best.residual > options.rescan_threshold * bscale) {
        for (double dk = options.scan_min; dk <= options.scan_max + 1e-12;
             dk += options.scan_step) {
            DesignResult trial = planar_solve_at(dists, sc.couplings, target.omegatilde(), dk,
                                                 options.n_components);
            if (trial.all_nonnegative && trial.residual < best.residual) best = std::move(trial);
        }
    }
    return best;
}

SpectrumComparison emulate_and_compare(const TargetCoulombSystem& target,
                                       const ChainGeometry& fiber, const DesignResult& design,
                                       const std::vector<double>& scales) {
    target.validate();
    const std::vector<double> sweep = scales.empty() ? std::vector<double>{1.0} : scales;
    SpectrumComparison out;
    out.scales = sweep;

    for (double s : sweep) {
        TargetCoulombSystem scaled = target;
        scaled.charge_scale = target.charge_scale / (s * s * s);

        const ModeSpaceHamiltonian mt = linearized_coulomb_hamiltonian(scaled);
        std::vector<SpectralComponent> comps;
        for (std::size_t l = 0; l < design.ratios.size(); ++l)
            comps.push_back({design.wavenumbers[l],
                             std::max(0.0, design.ratios[l]) * scaled.omegatilde()});
        const ModeSpaceHamiltonian me =
            mode_space_hamiltonian(fiber, PumpSpectrum(std::move(comps)));

        for (int sector : {1, 2}) {
            const auto et = sector_eigenenergies(mt, sector);
            const auto ee = sector_eigenenergies(me, sector);
            double& worst = sector == 1 ? out.max_rel_sector1 : out.max_rel_sector2;
            for (std::size_t i = 0; i < et.size(); ++i) {
                const double denom = std::max(std::abs(et[i]), 1e-300);
                worst = std::max(worst, std::abs(ee[i] - et[i]) / denom);
            }
            if (sector == 1) {
                out.target_sector1.push_back(et);
                out.emulated_sector1.push_back(ee);
            } else {
                out.target_sector2.push_back(et);
                out.emulated_sector2.push_back(ee);
            }
        }
    }
    return out;
}

TargetCoulombSystem parse_target_system(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("target parse error: ") + e.what());
    }
    TargetCoulombSystem t;
    try {
        const auto& ions = j.at("ions");
        if (ions.empty()) throw std::invalid_argument("target has no ions");
        const std::size_t nd = ions[0].is_array() ? ions[0].size() : 1;
        t.ion_positions.resize(static_cast<Eigen::Index>(ions.size()),
                               static_cast<Eigen::Index>(nd));
        for (std::size_t i = 0; i < ions.size(); ++i) {
            if (ions[i].is_array()) {
                if (ions[i].size() != nd)
                    throw std::invalid_argument("inconsistent ion dimensions");
                for (std::size_t a = 0; a < nd; ++a)
                    t.ion_positions(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a)) =
                        ions[i][a].get<double>();
            } else {
                t.ion_positions(static_cast<Eigen::Index>(i), 0) = ions[i].get<double>();
            }
        }
        t.charge_scale = j.value("charge_scale", 1.0);
        t.omega_T_prime = j.value("omega_T_prime", 1.0);
        t.delta0_prime = j.value("delta0_prime", 0.1);
        if (j.contains("mask")) {
            const auto& mask = j.at("mask");
            t.mask.resize(t.ion_positions.rows(), t.ion_positions.rows());
            if (static_cast<Eigen::Index>(mask.size()) != t.ion_positions.rows())
                throw std::invalid_argument("mask shape does not match ion count");
            for (std::size_t i = 0; i < mask.size(); ++i)
                for (std::size_t k = 0; k < mask[i].size(); ++k)
                    t.mask(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                        mask[i][k].get<bool>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("target schema error: ") + e.what());
    }
    t.validate();
    return t;
}

TargetCoulombSystem load_target_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open target file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_target_system(ss.str());
}

std::string target_system_to_json(const TargetCoulombSystem& target) {
    nlohmann::json j;
    auto ions = nlohmann::json::array();
    for (Eigen::Index i = 0; i < target.ion_positions.rows(); ++i) {
        auto row = nlohmann::json::array();
        for (Eigen::Index a = 0; a < target.ion_positions.cols(); ++a)
            row.push_back(target.ion_positions(i, a));
        ions.push_back(std::move(row));
    }
    j["ions"] = std::move(ions);
    j["charge_scale"] = target.charge_scale;
    j["omega_T_prime"] = target.omega_T_prime;
    j["delta0_prime"] = target.delta0_prime;
    if (target.mask.size() != 0) {
        auto mask = nlohmann::json::array();
        for (Eigen::Index i = 0; i < target.mask.rows(); ++i) {
            auto row = nlohmann::json::array();
            for (Eigen::Index k = 0; k < target.mask.cols(); ++k)
                row.push_back(static_cast<bool>(target.mask(i, k)));
            mask.push_back(std::move(row));
        }
        j["mask"] = std::move(mask);
    }
    return j.dump(2);
}

}  // namespace fibersim
