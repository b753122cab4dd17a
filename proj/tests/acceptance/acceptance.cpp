// End-to-end acceptance checks. Each criterion prints exactly one PASS/FAIL
// line; the process exits nonzero when any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fibersim/coulombmap.hpp"
#include "fibersim/dynamics.hpp"
#include "fibersim/hamiltonian.hpp"
#include "fibersim/readout.hpp"
#include "fibersim/regime.hpp"

using namespace fibersim;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int criterion, const std::string& label, bool ok, double seconds,
            const std::string& detail) {
    std::printf("criterion %d (%s): %s [%.2fs] %s\n", criterion, label.c_str(),
                ok ? "PASS" : "FAIL", seconds, detail.c_str());
    if (!ok) ++failures;
}

double bisect(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((flo < 0) == (fm < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double golden_min(const std::function<double(double)>& f, double a, double b) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 200; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

void criterion_1() {
    Timer timer;
    ChainGeometry geo({0.0, 0.75, 1.625});
    PumpSpectrum sp({{1.0, 1.0}, {4.0 / 3.0, 0.82}});
    const Eigen::MatrixXd g = coupling_matrix(geo, sp);
    bool ok = std::abs(g(0, 1) + 1.0) < 1e-12;
    ok = ok && std::abs(g(0, 2)) <= 3.1e-3 && std::abs(g(1, 2)) <= 3.1e-3;
    const ModeSpaceHamiltonian m{g};
    Eigen::VectorXcd e1(3);
    e1 << 1, 0, 0;
    double worst = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double theta = 20.0 * i / 2000.0;
        worst = std::max(worst, std::norm(single_excitation_evolve(m, e1, theta)(2)));
    }
    ok = ok && worst < 1e-4;
    const double t = timer.seconds();
    ok = ok && t < 1.0;
    char detail[160];
    std::snprintf(detail, sizeof(detail), "g12=%+.3e g13=%.2e g23=%.2e max_pop3=%.2e", g(0, 1),
                  g(0, 2), g(1, 2), worst);
    report(1, "spectator decoupling", ok, t, detail);
}

void criterion_2() {
    Timer timer;
    ChainGeometry geo({0.0, 0.25});
    PumpSpectrum sp({{1.0, 1.0}});
    const double pi = kTwoPi / 2.0;
    const std::complex<double> mi(0.0, -1.0);
    const double r = 1.0 / std::sqrt(2.0);

    Eigen::Matrix4cd iswap = Eigen::Matrix4cd::Identity();
    iswap(1, 1) = iswap(2, 2) = 0.0;
    iswap(1, 2) = iswap(2, 1) = mi;
    Eigen::Matrix4cd sqisw = Eigen::Matrix4cd::Identity();
    sqisw(1, 1) = sqisw(2, 2) = r;
    sqisw(1, 2) = sqisw(2, 1) = mi * r;

    double worst = 0.0;
    bool names_ok = true;
    const std::vector<std::pair<double, Eigen::Matrix4cd>> cases = {{pi / 2.0, iswap},
                                                                    {pi / 4.0, sqisw}};
    for (std::size_t c = 0; c < cases.size(); ++c) {
        auto [u, rep] = extract_two_qubit_gate(geo, sp, 0, 1, cases[c].first);
        // Align global phase on the largest reference entry.
        const std::complex<double> phase = u(0, 0) / std::abs(u(0, 0));
        const Eigen::Matrix4cd aligned = u / phase;
        worst = std::max(worst, (aligned - cases[c].second).cwiseAbs().maxCoeff());
        names_ok = names_ok && rep.gate == (c == 0 ? "iSWAP" : "SQiSW");
    }
    const double t = timer.seconds();
    const bool ok = worst < 1e-9 && names_ok && t < 1.0;
    char detail[96];
    std::snprintf(detail, sizeof(detail), "max entry deviation=%.2e", worst);
    report(2, "two-qubit gates", ok, t, detail);
}

void criterion_3() {
    Timer timer;
    double worst_fid = 1.0;
    for (double a : {1.0, -1.0})
        for (double b : {1.0, -1.0})
            for (double gt : {0.3, 0.7, kTwoPi / 4.0}) {
                const auto cc = coherent_evolution_crosscheck({a, 0.0}, {b, 0.0}, 1.0, gt, 12);
                worst_fid = std::min(worst_fid, cc.fidelity);
            }
    FockSpace space(1, 12);
    const auto plus = coherent_state(space, {{1.0, 0.0}});
    const auto minus = coherent_state(space, {{-1.0, 0.0}});
    const double overlap = std::norm(plus.state.amplitudes.dot(minus.state.amplitudes));
    const double t = timer.seconds();
    const bool ok =
        worst_fid > 1.0 - 1e-6 && std::abs(overlap - std::exp(-4.0)) < 1e-6 && t < 5.0;
    char detail[96];
    std::snprintf(detail, sizeof(detail), "min fidelity=%.9f overlap=%.9f", worst_fid, overlap);
    report(3, "coherent-state closed form", ok, t, detail);
}

void criterion_4() {
    Timer timer;
    TargetCoulombSystem target;
    target.ion_positions.resize(3, 1);
    target.ion_positions << 0.0, 1.0, 2.0;
    target.delta0_prime = 0.1;
    target.charge_scale = 0.004 / (0.1 * 0.1);
    const ChainGeometry fiber({0.0, 0.375, 0.75});
    const DesignResult design = design_line_spectrum(target, fiber);
    std::vector<double> sweep;
    for (int i = 0; i < 20; ++i) sweep.push_back(0.8 + 0.8 * i / 19.0);
    const SpectrumComparison cmp = emulate_and_compare(target, fiber, design, sweep);
    const double t = timer.seconds();
    const bool ok = design.residual < 1e-10 && cmp.max_rel_sector1 < 1e-8 &&
                    cmp.max_rel_sector2 < 1e-8 && t < 5.0;
    char detail[128];
    std::snprintf(detail, sizeof(detail), "residual=%.2e rel1=%.2e rel2=%.2e", design.residual,
                  cmp.max_rel_sector1, cmp.max_rel_sector2);
    report(4, "line-chain emulation", ok, t, detail);
}

void criterion_5() {
    Timer timer;
    // Reference strength ratios for the triangular target, full and with the
    // (1,3) interaction suppressed (max-normalized comparison).
    const std::vector<double> ref_full = {251.5, 643,   580.5, 72,    0,     666.2, 1149.7,
                                          754.3, 104.7, 115.5, 591.3, 724.8, 392.4, 81.2};
    const std::vector<double> ref_cut = {251.4, 642.6, 580.1, 72,    0,     665.8, 1149.1,
                                         754.3, 104.8, 115.3, 590.8, 724.5, 392.4, 81.3};
    bool ok = true;
    double worst_dev = 0.0, worst_rel = 0.0;
    for (bool masked : {false, true}) {
        TargetCoulombSystem target;
        target.ion_positions.resize(3, 2);
        target.ion_positions << 0.0, 0.0, std::sqrt(3.0) / 2.0, 0.5, 0.0, 1.0;
        target.delta0_prime = 0.1;
        target.charge_scale = 0.004 / (0.1 * 0.1);
        if (masked) {
            target.mask.resize(3, 3);
            target.mask.setConstant(true);
            target.mask(0, 2) = target.mask(2, 0) = false;
        }
        const double base = 5.0 / 3.0;
        const ChainGeometry fiber(
            {0.0, 1.0 / 3.0, 2.0 / 3.0, base, base + 0.25, base + 0.5});
        const DesignResult design = design_planar_spectrum(target, fiber);
        ok = ok && design.all_nonnegative;
        const auto& ref = masked ? ref_cut : ref_full;
        double mx = 0.0, rmx = 0.0;
        for (double v : design.ratios) mx = std::max(mx, v);
        for (double v : ref) rmx = std::max(rmx, v);
        for (std::size_t i = 0; i < ref.size(); ++i)
            worst_dev = std::max(worst_dev, std::abs(design.ratios[i] / mx - ref[i] / rmx));
        const SpectrumComparison cmp = emulate_and_compare(target, fiber, design, {1.0});
        worst_rel = std::max(worst_rel, cmp.max_rel_sector1);
    }
    ok = ok && worst_dev < 0.02 && worst_rel < 0.01;
    const double t = timer.seconds();
    ok = ok && t < 10.0;
    char detail[128];
    std::snprintf(detail, sizeof(detail), "reference ratio dev=%.4f spectrum rel=%.2e", worst_dev,
                  worst_rel);
    report(5, "triangle emulation", ok, t, detail);
}

void criterion_6() {
    Timer timer;
    ChainGeometry geo({0.0, 0.5, 1.1});
    PumpSpectrum sp({{1.0, 0.1}});
    const ModeSpaceHamiltonian m = mode_space_hamiltonian(geo, sp);
    Eigen::VectorXcd e3(3);
    e3 << 0, 0, 1;
    auto hub = [&](double t) { return std::norm(single_excitation_evolve(m, e3, t)(2)); };

    // Locate the markers on a coarse grid, then refine.
    const double dt = 0.02;
    std::vector<double> grid;
    for (double t = 0.0; t <= 80.0; t += dt) grid.push_back(hub(t));
    double t_w = -1.0, t_bell = -1.0, t_return = -1.0;
    for (std::size_t i = 1; i < grid.size() && t_w < 0; ++i)
        if (grid[i - 1] > 1.0 / 3.0 && grid[i] <= 1.0 / 3.0)
            t_w = bisect([&](double t) { return hub(t) - 1.0 / 3.0; }, (i - 1) * dt, i * dt);
    for (std::size_t i = static_cast<std::size_t>(t_w / dt) + 1;
         i + 1 < grid.size() && t_bell < 0; ++i)
        if (grid[i] <= grid[i - 1] && grid[i] <= grid[i + 1])
            t_bell = golden_min(hub, (i - 1) * dt, (i + 1) * dt);
    for (std::size_t i = static_cast<std::size_t>(t_bell / dt) + 1;
         i + 1 < grid.size() && t_return < 0; ++i)
        if (grid[i] > 0.99 && grid[i] >= grid[i - 1] && grid[i] >= grid[i + 1])
            t_return = golden_min([&](double t) { return 1.0 - hub(t); }, (i - 1) * dt,
                                  (i + 1) * dt);

    FockSpace space(3, 2);
    const Operator h = rwa_hamiltonian(geo, sp, space);
    Propagator prop(h);
    const FockStateVector psi0 = basis_state(space, {0, 0, 1});
    auto entropies = [&](double t) {
        const FockStateVector psi = prop.apply(psi0, t);
        return std::array<double, 3>{von_neumann_entropy(partial_trace(psi, {0})),
                                     von_neumann_entropy(partial_trace(psi, {2})),
                                     von_neumann_entropy(partial_trace(psi, {0, 1}))};
    };
    const auto w = entropies(t_w);
    const auto bell = entropies(t_bell);
    const auto ret = entropies(t_return);
    bool ok = t_w > 0 && t_bell > 0 && t_return > 0;
    ok = ok && std::abs(w[0] - 0.6365) < 1e-3 && std::abs(w[1] - 0.6365) < 1e-3;
    ok = ok && std::abs(bell[0] - std::log(2.0)) < 1e-6 && bell[2] < 1e-6;
    ok = ok && ret[0] < 1e-6 && ret[1] < 1e-6 && ret[2] < 1e-6;
    const double t = timer.seconds();
    ok = ok && t < 5.0;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "S_w=(%.4f,%.4f) S_bell=(%.6f,%.1e) S_return_max=%.1e", w[0], w[1], bell[0],
                  bell[2], std::max({ret[0], ret[1], ret[2]}));
    report(6, "entanglement trajectory", ok, t, detail);
}

void criterion_7() {
    Timer timer;
    PumpSpectrum sp({{1.0, 0.1}});
    OscillatorParams osc;
    double same_minus = 0.0, split_plus = 0.0;
    for (int i = 0; i <= 60; ++i) {
        const double x3 = 1.05 + (3.0 - 1.05) * i / 60.0;
        ChainGeometry geo({0.0, 1.0, x3});
        FockSpace space(3, 2);
        const FockStateVector s100 = basis_state(space, {1, 0, 0});
        const FockStateVector s011 = basis_state(space, {0, 1, 1});
        const double im1 = state_dependent_intensity(s100, geo, sp, osc, OutputDirection::left);
        const double im2 = state_dependent_intensity(s011, geo, sp, osc, OutputDirection::left);
        const double ip1 = state_dependent_intensity(s100, geo, sp, osc, OutputDirection::right);
        const double ip2 = state_dependent_intensity(s011, geo, sp, osc, OutputDirection::right);
        same_minus = std::max(same_minus, std::abs(im1 - im2));
        split_plus = std::max(split_plus, std::abs(ip1 - ip2));
    }
    ChainGeometry geo({0.0, 0.5, 1.1});
    FockSpace space(3, 2);
    const Operator h = rwa_hamiltonian(geo, sp, space);
    Propagator prop(h);
    const FockStateVector psi0 = basis_state(space, {0, 0, 1});
    double ip_min = 1e300, ip_max = -1e300, im_min = 1e300, im_max = -1e300;
    for (int i = 0; i <= 200; ++i) {
        const FockStateVector psi = prop.apply(psi0, 80.0 * i / 200.0);
        const double ip = state_dependent_intensity(psi, geo, sp, osc, OutputDirection::right);
        const double im = state_dependent_intensity(psi, geo, sp, osc, OutputDirection::left);
        ip_min = std::min(ip_min, ip);
        ip_max = std::max(ip_max, ip);
        im_min = std::min(im_min, im);
        im_max = std::max(im_max, im);
    }
    const double t = timer.seconds();
    const bool ok = same_minus < 1e-10 && split_plus > 1e-3 &&
                    (ip_max - ip_min) / ip_max < 1e-9 && (im_max - im_min) > 1e-3 && t < 5.0;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "sweep |dI-|=%.1e |dI+|=%.2e trajectory relvar(I+)=%.1e span(I-)=%.2e",
                  same_minus, split_plus, (ip_max - ip_min) / ip_max, im_max - im_min);
    report(7, "state-selective readout", ok, t, detail);
}

void criterion_8() {
    Timer timer;
    const PhysicalParams p = cesium_params();
    const IntensityReport ir = scattered_intensity(p);
    const LambDickeReport ld = check_lamb_dicke(p);
    const InteractionBoundReport ib = check_interaction_bound(p, 1e4);
    const double t = timer.seconds();
    const bool intensity_ok = std::abs(ir.intensity_per_saturation - 6.2e-4) < 0.05 * 6.2e-4;
    const bool trap_ok = std::abs(std::log10(ld.omega_trap_bound) - 5.0) < 0.1;
    const double bound_ratio = ib.omega_k_bound / 1e5;
    const bool coupling_ok = bound_ratio > 0.1 && bound_ratio < 10.0;
    const bool ok = intensity_ok && trap_ok && coupling_ok && t < 0.1;
    char detail[128];
    std::snprintf(detail, sizeof(detail), "I=%.3e W/m2 trap bound=%.2e /s coupling bound=%.2e /s",
                  ir.intensity_per_saturation, ld.omega_trap_bound, ib.omega_k_bound);
    report(8, "laboratory feasibility", ok, t, detail);
}

void criterion_9() {
    Timer timer;
    bool ok = true;

    // Force is minus the potential gradient.
    {
        PumpSpectrum sp({{1.0, 0.7}, {1.3, 0.4}});
        const std::vector<double> base = {0.0, 0.55, 1.3};
        const double h = 1e-6;
        for (std::size_t j = 0; j < base.size(); ++j) {
            auto u = [&](double eps) {
                std::vector<double> pos = base;
                pos[j] += eps;
                return total_potential(ChainGeometry(pos), sp, 0.9);
            };
            const double grad = (u(h) - u(-h)) / (2.0 * h);
            const double force = pair_force(ChainGeometry(base), sp, 0.9, j);
            ok = ok && std::abs(force + grad) < 1e-5 * std::max(1.0, std::abs(grad));
        }
    }

    ChainGeometry geo({0.0, 0.3, 1.0});
    PumpSpectrum sp({{1.0, 0.5}, {1.4, 0.2}});
    FockSpace space(3, 2);
    const Operator h = rwa_hamiltonian(geo, sp, space);

    // Unitarity, number and energy conservation on a fixed random state.
    {
        std::mt19937 rng(20240815);
        std::normal_distribution<double> gauss;
        FockStateVector psi0{space, Eigen::VectorXcd(space.dim())};
        for (Eigen::Index i = 0; i < space.dim(); ++i)
            psi0.amplitudes(i) = std::complex<double>(gauss(rng), gauss(rng));
        psi0.normalize();
        const Operator n = total_number_operator(space);
        const double n0 = std::real(psi0.amplitudes.dot(n * psi0.amplitudes));
        const double e0 = std::real(psi0.amplitudes.dot(h * psi0.amplitudes));
        Propagator prop(h);
        for (double t : {1.3, 17.0, 64.0}) {
            const FockStateVector psi = prop.apply(psi0, t);
            ok = ok && std::abs(psi.norm() - 1.0) < 1e-9;
            ok = ok && std::abs(std::real(psi.amplitudes.dot(n * psi.amplitudes)) - n0) < 1e-9;
            ok = ok && std::abs(std::real(psi.amplitudes.dot(h * psi.amplitudes)) - e0) < 1e-9;
        }
    }

    // Mode-space sector spectra against the Fock-space restriction.
    {
        const ModeSpaceHamiltonian m = mode_space_hamiltonian(geo, sp);
        for (int sector : {1, 2}) {
            const auto reduced = sector_eigenenergies(m, sector);
            std::vector<Eigen::Index> members;
            for (Eigen::Index i = 0; i < space.dim(); ++i) {
                const auto occ = space.occupation(i);
                std::size_t total = 0;
                for (std::size_t v : occ) total += v;
                if (total == static_cast<std::size_t>(sector)) members.push_back(i);
            }
            Operator block(members.size(), members.size());
            for (std::size_t r = 0; r < members.size(); ++r)
                for (std::size_t c = 0; c < members.size(); ++c)
                    block(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                        h(members[r], members[c]);
            Eigen::SelfAdjointEigenSolver<Operator> solver(block);
            for (std::size_t i = 0; i < reduced.size(); ++i)
                ok = ok && std::abs(reduced[i] - solver.eigenvalues()(
                                                     static_cast<Eigen::Index>(i))) < 1e-9;
        }
    }

    // Entropy symmetry of pure-state bipartitions.
    {
        std::mt19937 rng(7);
        std::normal_distribution<double> gauss;
        for (int trial = 0; trial < 5; ++trial) {
            FockStateVector psi{space, Eigen::VectorXcd(space.dim())};
            for (Eigen::Index i = 0; i < space.dim(); ++i)
                psi.amplitudes(i) = std::complex<double>(gauss(rng), gauss(rng));
            psi.normalize();
            const double s1 = von_neumann_entropy(partial_trace(psi, {0}));
            const double s23 = von_neumann_entropy(partial_trace(psi, {1, 2}));
            ok = ok && std::abs(s1 - s23) < 1e-9;
        }
    }

    const double t = timer.seconds();
    ok = ok && t < 60.0;
    report(9, "invariant property suite", ok, t, "");
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
}
