#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "fibersim/coulombmap.hpp"
#include "fibersim/dynamics.hpp"
#include "fibersim/hamiltonian.hpp"
#include "fibersim/readout.hpp"
#include "fibersim/regime.hpp"
#include "presets.hpp"

namespace fibersim::cli {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return buf;
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

void write_manifest(const std::string& out_dir, const std::string& command,
                    const nlohmann::json& options, const std::vector<std::string>& outputs) {
    nlohmann::json j;
    j["command"] = command;
    j["version"] = kVersion;
    j["options"] = options;
    j["outputs"] = outputs;
    write_text(out_dir + "/manifest.json", j.dump(2) + "\n");
}

ChainConfig resolve_chain(const std::string& config_file, const std::string& preset) {
    if (!preset.empty()) return preset_chain(preset);
    if (config_file.empty())
        throw std::invalid_argument("either --config or --preset is required");
    try {
        return load_chain_config(config_file);
    } catch (const std::runtime_error& e) {
        throw std::invalid_argument(e.what());
    }
}

FockStateVector resolve_state(const ChainConfig& chain, const std::string& state_file,
                              const std::vector<std::size_t>& initial, std::size_t cutoff) {
    if (!state_file.empty()) {
        std::ifstream in(state_file);
        if (!in) throw std::invalid_argument("cannot open state file: " + state_file);
        std::ostringstream ss;
        ss << in.rdbuf();
        FockStateVector st = state_from_json(ss.str());
        if (st.space.n_modes() != chain.geometry.n_particles())
            throw std::invalid_argument("state mode count does not match the chain");
        return st;
    }
    std::vector<std::size_t> occ = initial;
    if (occ.empty()) occ.assign(chain.geometry.n_particles(), 0);
    if (occ.size() != chain.geometry.n_particles())
        throw std::invalid_argument("initial occupation length does not match the chain");
    return basis_state(FockSpace(chain.geometry.n_particles(), cutoff), occ);
}

std::vector<std::vector<std::size_t>> parse_partitions(const std::string& text, std::size_t n) {
    std::vector<std::vector<std::size_t>> partitions;
    std::stringstream outer(text);
    std::string part;
    while (std::getline(outer, part, ';')) {
        std::vector<std::size_t> keep;
        std::stringstream inner(part);
        std::string tok;
        while (std::getline(inner, tok, ',')) {
            const long v = std::stol(tok);
            if (v < 1 || static_cast<std::size_t>(v) > n)
                throw std::invalid_argument("partition index out of range: " + tok);
            keep.push_back(static_cast<std::size_t>(v - 1));
        }
        if (!keep.empty()) partitions.push_back(std::move(keep));
    }
    if (partitions.empty()) throw std::invalid_argument("no partitions given");
    return partitions;
}

std::vector<double> sweep_scales() {
    std::vector<double> scales;
    for (int i = 0; i < 20; ++i) scales.push_back(0.8 + 0.8 * i / 19.0);
    return scales;
}

// Bisection for f(t) = 0 on [lo, hi] with f(lo), f(hi) of opposite sign.
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

// Golden-section minimizer on [lo, hi].
double golden_min(const std::function<double(double)>& f, double lo, double hi) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
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

int design_exit_code(const DesignResult& design, double target_scale) {
    if (!design.all_nonnegative) return kExitInfeasible;
    if (design.residual > 1e-2 * std::max(target_scale, 1e-12)) return kExitInfeasible;
    return kExitOk;
}

void write_design_outputs(const std::string& out_dir, const DesignResult& design,
                          const SpectrumComparison& cmp) {
    std::ostringstream csv;
    csv << "l,k_over_k0,omega_over_omegatilde,intensity_positive\n";
    for (std::size_t l = 0; l < design.ratios.size(); ++l)
        csv << l << ',' << fmt(design.wavenumbers[l]) << ',' << fmt(design.ratios[l]) << ','
            << (design.ratios[l] >= -1e-12 ? 1 : 0) << '\n';
    write_text(out_dir + "/spectrum.csv", csv.str());

    nlohmann::json report;
    report["residual"] = design.residual;
    report["delta_k"] = design.delta_k;
    report["all_nonnegative"] = design.all_nonnegative;
    report["max_rel_sector1"] = cmp.max_rel_sector1;
    report["max_rel_sector2"] = cmp.max_rel_sector2;
    write_text(out_dir + "/design_report.json", report.dump(2) + "\n");
}

void sweep_csv(const std::string& path, const SpectrumComparison& cmp) {
    std::ostringstream csv;
    csv << "scale";
    const std::size_t n1 = cmp.target_sector1.front().size();
    const std::size_t n2 = cmp.target_sector2.front().size();
    for (std::size_t i = 0; i < n1; ++i) csv << ",e1_target_" << i + 1;
    for (std::size_t i = 0; i < n1; ++i) csv << ",e1_emulated_" << i + 1;
    for (std::size_t i = 0; i < n2; ++i) csv << ",e2_target_" << i + 1;
    for (std::size_t i = 0; i < n2; ++i) csv << ",e2_emulated_" << i + 1;
    csv << '\n';
    for (std::size_t s = 0; s < cmp.scales.size(); ++s) {
        csv << fmt(cmp.scales[s]);
        for (double v : cmp.target_sector1[s]) csv << ',' << fmt(v);
        for (double v : cmp.emulated_sector1[s]) csv << ',' << fmt(v);
        for (double v : cmp.target_sector2[s]) csv << ',' << fmt(v);
        for (double v : cmp.emulated_sector2[s]) csv << ',' << fmt(v);
        csv << '\n';
    }
    write_text(path, csv.str());
}

int figure_fig2(const std::string& out_dir) {
    const TargetCoulombSystem target = line3_target();
    const ChainGeometry fiber = line3_fiber();
    const DesignResult design = design_line_spectrum(target, fiber);
    const SpectrumComparison cmp = emulate_and_compare(target, fiber, design, sweep_scales());
    sweep_csv(out_dir + "/fig2.csv", cmp);
    write_design_outputs(out_dir, design, cmp);
    write_manifest(out_dir, "figure", {{"name", "fig2"}},
                   {"fig2.csv", "spectrum.csv", "design_report.json"});
    return design_exit_code(design, 1.0);
}

int figure_fig4(const std::string& out_dir) {
    std::vector<std::string> outputs;
    int code = kExitOk;
    for (bool suppressed : {false, true}) {
        const TargetCoulombSystem target = triangle_target(suppressed);
        const ChainGeometry fiber = triangle_fiber();
        const DesignResult design = design_planar_spectrum(target, fiber);
        const SpectrumComparison cmp = emulate_and_compare(target, fiber, design, sweep_scales());
        const std::string name = suppressed ? "fig4_suppressed" : "fig4_full";
        sweep_csv(out_dir + "/" + name + ".csv", cmp);
        outputs.push_back(name + ".csv");
        std::ostringstream csv;
        csv << "l,k_over_k0,omega_over_omegatilde,intensity_positive\n";
        for (std::size_t l = 0; l < design.ratios.size(); ++l)
            csv << l << ',' << fmt(design.wavenumbers[l]) << ',' << fmt(design.ratios[l]) << ','
                << (design.ratios[l] >= -1e-12 ? 1 : 0) << '\n';
        write_text(out_dir + "/" + name + "_spectrum.csv", csv.str());
        outputs.push_back(name + "_spectrum.csv");
        code = std::max(code, design_exit_code(design, 1.0));
    }
    write_manifest(out_dir, "figure", {{"name", "fig4"}}, outputs);
    return code;
}

int figure_fig5(const std::string& out_dir) {
    const ChainConfig chain = fig5_chain();
    // Interaction-picture dynamics: the pure coupling matrix, local
    // oscillator phases removed.
    const ModeSpaceHamiltonian m{coupling_matrix(chain.geometry, chain.spectrum)};
    Eigen::VectorXcd initial(3);
    initial << 1, 0, 0;
    std::ostringstream csv;
    csv << "t,pop_1,pop_2,pop_3\n";
    for (int i = 0; i <= 400; ++i) {
        const double t = 20.0 * i / 400.0;
        const Eigen::VectorXcd amp = single_excitation_evolve(m, initial, t);
        csv << fmt(t) << ',' << fmt(std::norm(amp(0))) << ',' << fmt(std::norm(amp(1))) << ','
            << fmt(std::norm(amp(2))) << '\n';
    }
    write_text(out_dir + "/fig5.csv", csv.str());
    write_manifest(out_dir, "figure", {{"name", "fig5"}}, {"fig5.csv"});
    return kExitOk;
}

int figure_fig6(const std::string& out_dir) {
    const ChainConfig chain = fig6_chain();
    const FockSpace space(3, 2);
    const Operator h = rwa_hamiltonian(chain.geometry, chain.spectrum, space);
    const FockStateVector psi0 = basis_state(space, {0, 0, 1});

    const double t_max = 80.0;
    std::vector<double> times;
    for (int i = 0; i <= 800; ++i) times.push_back(t_max * i / 800.0);
    const auto trace = entanglement_trace(psi0, h, times, {{0}, {2}, {0, 1}});

    std::ostringstream csv;
    csv << "t,pop_1,pop_2,pop_3,S_1,S_3,S_12\n";
    for (std::size_t i = 0; i < times.size(); ++i) {
        csv << fmt(times[i]);
        for (std::size_t m = 0; m < 3; ++m) csv << ',' << fmt(trace.populations[m][i]);
        for (std::size_t p = 0; p < 3; ++p) csv << ',' << fmt(trace.entropies[p][i]);
        csv << '\n';
    }
    write_text(out_dir + "/fig6.csv", csv.str());

    // Marker times from the hub (third) population of the closed
    // single-excitation sector.
    const ModeSpaceHamiltonian m = mode_space_hamiltonian(chain.geometry, chain.spectrum);
    Eigen::VectorXcd e3(3);
    e3 << 0, 0, 1;
    auto hub_pop = [&](double t) {
        return std::norm(single_excitation_evolve(m, e3, t)(2));
    };
    // Locate the markers on a dense grid, then refine by bisection (1/3
    // crossings) or golden-section search (extrema).
    const double dt = 0.02;
    std::vector<double> grid;
    for (double t = 0.0; t <= t_max + 1e-12; t += dt) grid.push_back(hub_pop(t));
    auto first_crossing = [&](std::size_t start, bool downward) {
        for (std::size_t i = start + 1; i < grid.size(); ++i) {
            const bool hit = downward ? (grid[i - 1] > 1.0 / 3.0 && grid[i] <= 1.0 / 3.0)
                                      : (grid[i - 1] < 1.0 / 3.0 && grid[i] >= 1.0 / 3.0);
            if (hit)
                return bisect([&](double t) { return hub_pop(t) - 1.0 / 3.0; }, (i - 1) * dt,
                              i * dt);
        }
        throw std::runtime_error("marker crossing not found");
    };
    auto first_extremum = [&](std::size_t start, bool minimum) {
        for (std::size_t i = std::max<std::size_t>(start, 1); i + 1 < grid.size(); ++i) {
            const bool hit = minimum ? (grid[i] <= grid[i - 1] && grid[i] <= grid[i + 1])
                                     : (grid[i] >= grid[i - 1] && grid[i] >= grid[i + 1]);
            if (hit) {
                auto f = [&](double t) { return minimum ? hub_pop(t) : -hub_pop(t); };
                return golden_min(f, (i - 1) * dt, (i + 1) * dt);
            }
        }
        throw std::runtime_error("marker extremum not found");
    };
    const double t_w = first_crossing(0, true);
    const double t_bell = first_extremum(static_cast<std::size_t>(t_w / dt) + 1, true);
    const double t_w_back = first_crossing(static_cast<std::size_t>(t_bell / dt) + 1, false);
    const double t_return = first_extremum(static_cast<std::size_t>(t_w_back / dt) + 1, false);

    Propagator prop(h);
    nlohmann::json markers;
    const std::vector<std::pair<std::string, double>> points = {
        {"w_point", t_w}, {"bell_point", t_bell}, {"w_return", t_w_back}, {"full_return", t_return}};
    for (const auto& [name, t] : points) {
        const FockStateVector psi = prop.apply(psi0, t);
        markers[name] = {{"t", t},
                         {"S_1", von_neumann_entropy(partial_trace(psi, {0}))},
                         {"S_3", von_neumann_entropy(partial_trace(psi, {2}))},
                         {"S_12", von_neumann_entropy(partial_trace(psi, {0, 1}))}};
    }
    write_text(out_dir + "/fig6_markers.json", markers.dump(2) + "\n");
    write_manifest(out_dir, "figure", {{"name", "fig6"}}, {"fig6.csv", "fig6_markers.json"});
    return kExitOk;
}

int figure_fig7(const std::string& out_dir) {
    std::ostringstream csv;
    csv << "x3_over_lambda0,I_minus_over_Iunit,I_plus_over_Iunit,state_label\n";
    const std::vector<std::pair<std::string, std::vector<std::size_t>>> states = {
        {"000", {0, 0, 0}}, {"100", {1, 0, 0}}, {"011", {0, 1, 1}}, {"111", {1, 1, 1}}};
    for (int i = 0; i <= 120; ++i) {
        const double x3 = 1.05 + (3.0 - 1.05) * i / 120.0;
        const ChainConfig chain = fig7_chain(x3);
        const FockSpace space(3, 2);
        for (const auto& [label, occ] : states) {
            const FockStateVector st = basis_state(space, occ);
            const double im = state_dependent_intensity(st, chain.geometry, chain.spectrum,
                                                        chain.oscillator, OutputDirection::left);
            const double ip = state_dependent_intensity(st, chain.geometry, chain.spectrum,
                                                        chain.oscillator, OutputDirection::right);
            csv << fmt(x3) << ',' << fmt(im) << ',' << fmt(ip) << ',' << label << '\n';
        }
    }
    write_text(out_dir + "/fig7.csv", csv.str());
    write_manifest(out_dir, "figure", {{"name", "fig7"}}, {"fig7.csv"});
    return kExitOk;
}

int figure_fig8(const std::string& out_dir) {
    const ChainConfig chain = fig6_chain();
    const FockSpace space(3, 2);
    const Operator h = rwa_hamiltonian(chain.geometry, chain.spectrum, space);
    Propagator prop(h);
    const FockStateVector psi0 = basis_state(space, {0, 0, 1});
    std::ostringstream csv;
    csv << "t,I_minus_over_Iunit,I_plus_over_Iunit\n";
    for (int i = 0; i <= 400; ++i) {
        const double t = 80.0 * i / 400.0;
        const FockStateVector psi = prop.apply(psi0, t);
        const double im = state_dependent_intensity(psi, chain.geometry, chain.spectrum,
                                                    chain.oscillator, OutputDirection::left);
        const double ip = state_dependent_intensity(psi, chain.geometry, chain.spectrum,
                                                    chain.oscillator, OutputDirection::right);
        csv << fmt(t) << ',' << fmt(im) << ',' << fmt(ip) << '\n';
    }
    write_text(out_dir + "/fig8.csv", csv.str());
    write_manifest(out_dir, "figure", {{"name", "fig8"}}, {"fig8.csv"});
    return kExitOk;
}

}  // namespace

int cmd_design(const DesignArgs& args) {
    TargetCoulombSystem target;
    ChainGeometry fiber({0.0, 1.0});
    double delta_k = args.delta_k;

    if (args.preset == "line3") {
        target = line3_target();
        fiber = line3_fiber();
        if (delta_k == 0.0) delta_k = 0.7;
    } else if (args.preset == "triangle") {
        target = triangle_target(false);
        fiber = triangle_fiber();
        if (delta_k == 0.0) delta_k = 0.33;
    } else if (!args.preset.empty()) {
        throw std::invalid_argument("unknown design preset: " + args.preset);
    } else {
        if (args.target_file.empty())
            throw std::invalid_argument("either --preset or --target is required");
        try {
            target = load_target_system(args.target_file);
        } catch (const std::runtime_error& e) {
            throw std::invalid_argument(e.what());
        }
        if (args.fiber_positions.empty())
            throw std::invalid_argument("--fiber positions are required with --target");
        fiber = ChainGeometry(args.fiber_positions);
        if (delta_k == 0.0) delta_k = target.n_dims() == 1 ? 0.7 : 0.33;
    }

    if (!args.mask_pair.empty()) {
        if (args.mask_pair.size() != 2)
            throw std::invalid_argument("--mask takes exactly two ion indices");
        const std::size_t i = args.mask_pair[0], j = args.mask_pair[1];
        if (i < 1 || j < 1 || i > target.n_ions() || j > target.n_ions() || i == j)
            throw std::invalid_argument("--mask indices out of range");
        if (target.mask.size() == 0) {
            target.mask.resize(static_cast<Eigen::Index>(target.n_ions()),
                               static_cast<Eigen::Index>(target.n_ions()));
            target.mask.setConstant(true);
        }
        target.mask(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j - 1)) = false;
        target.mask(static_cast<Eigen::Index>(j - 1), static_cast<Eigen::Index>(i - 1)) = false;
    }

    DesignResult design;
    if (target.n_dims() == 1) {
        LineDesignOptions opt;
        opt.delta_k = delta_k;
        design = design_line_spectrum(target, fiber, opt);
    } else {
        PlanarDesignOptions opt;
        opt.delta_k = delta_k;
        design = design_planar_spectrum(target, fiber, opt);
    }
    const SpectrumComparison cmp = emulate_and_compare(target, fiber, design, sweep_scales());
    write_design_outputs(args.out_dir, design, cmp);
    nlohmann::json options = {{"preset", args.preset},
                              {"target", args.target_file},
                              {"delta_k", design.delta_k},
                              {"mask", args.mask_pair}};
    write_manifest(args.out_dir, "design", options, {"spectrum.csv", "design_report.json"});
    return design_exit_code(design, 1.0);
}

int cmd_figure(const FigureArgs& args) {
    if (args.name == "fig2") return figure_fig2(args.out_dir);
    if (args.name == "fig4") return figure_fig4(args.out_dir);
    if (args.name == "fig5") return figure_fig5(args.out_dir);
    if (args.name == "fig6") return figure_fig6(args.out_dir);
    if (args.name == "fig7") return figure_fig7(args.out_dir);
    if (args.name == "fig8") return figure_fig8(args.out_dir);
    throw std::invalid_argument("unknown figure name: " + args.name);
}

int cmd_evolve(const EvolveArgs& args) {
    const ChainConfig chain = resolve_chain(args.config_file, args.preset);
    const FockStateVector psi0 = resolve_state(chain, args.state_file, args.initial, args.cutoff);
    const Operator h = rwa_hamiltonian(chain.geometry, chain.spectrum, psi0.space,
                                       chain.oscillator.omega_trap);
    const FockStateVector psi = evolve(psi0, h, args.time);
    write_text(args.out_dir + "/state.json", state_to_json(psi) + "\n");
    write_manifest(args.out_dir, "evolve",
                   {{"config", args.config_file},
                    {"preset", args.preset},
                    {"t", args.time},
                    {"cutoff", args.cutoff}},
                   {"state.json"});
    return kExitOk;
}

int cmd_eigs(const EigsArgs& args) {
    const ChainConfig chain = resolve_chain(args.config_file, args.preset);
    const ModeSpaceHamiltonian m = mode_space_hamiltonian(chain.geometry, chain.spectrum,
                                                          chain.oscillator.omega_trap);
    const auto energies = sector_eigenenergies(m, args.sector);
    std::ostringstream csv;
    csv << "index,energy_over_omega_T\n";
    for (std::size_t i = 0; i < energies.size(); ++i)
        csv << i << ',' << fmt(energies[i]) << '\n';
    write_text(args.out_dir + "/eigs.csv", csv.str());
    write_manifest(
        args.out_dir, "eigs",
        {{"config", args.config_file}, {"preset", args.preset}, {"sector", args.sector}},
        {"eigs.csv"});
    return kExitOk;
}

int cmd_entropy(const EntropyArgs& args) {
    const ChainConfig chain = resolve_chain(args.config_file, args.preset);
    const FockStateVector psi0 = resolve_state(chain, "", args.initial, args.cutoff);
    const auto partitions = parse_partitions(args.partitions, chain.geometry.n_particles());
    const Operator h = rwa_hamiltonian(chain.geometry, chain.spectrum, psi0.space,
                                       chain.oscillator.omega_trap);
    std::vector<double> times;
    for (std::size_t i = 0; i <= args.steps; ++i)
        times.push_back(args.t_max * static_cast<double>(i) / static_cast<double>(args.steps));
    const auto trace = entanglement_trace(psi0, h, times, partitions);

    std::ostringstream csv;
    csv << 't';
    for (std::size_t m = 0; m < chain.geometry.n_particles(); ++m) csv << ",pop_" << m + 1;
    for (const auto& keep : partitions) {
        csv << ",S_";
        for (std::size_t i = 0; i < keep.size(); ++i) csv << (i ? "_" : "") << keep[i] + 1;
    }
    csv << '\n';
    for (std::size_t i = 0; i < times.size(); ++i) {
        csv << fmt(times[i]);
        for (std::size_t m = 0; m < chain.geometry.n_particles(); ++m)
            csv << ',' << fmt(trace.populations[m][i]);
        for (std::size_t p = 0; p < partitions.size(); ++p)
            csv << ',' << fmt(trace.entropies[p][i]);
        csv << '\n';
    }
    write_text(args.out_dir + "/entropy.csv", csv.str());
    write_manifest(args.out_dir, "entropy",
                   {{"config", args.config_file},
                    {"preset", args.preset},
                    {"t_max", args.t_max},
                    {"steps", args.steps},
                    {"partitions", args.partitions},
                    {"cutoff", args.cutoff}},
                   {"entropy.csv"});
    return kExitOk;
}

int cmd_readout(const ReadoutArgs& args) {
    const ChainConfig chain = resolve_chain(args.config_file, args.preset);
    const FockStateVector psi = resolve_state(chain, args.state_file, args.initial, args.cutoff);
    nlohmann::json j;
    j["I_minus_over_Iunit"] = state_dependent_intensity(psi, chain.geometry, chain.spectrum,
                                                        chain.oscillator, OutputDirection::left);
    j["I_plus_over_Iunit"] = state_dependent_intensity(psi, chain.geometry, chain.spectrum,
                                                       chain.oscillator, OutputDirection::right);
    j["I_minus_classical"] =
        classical_output_intensity(chain.geometry, chain.spectrum, OutputDirection::left);
    j["I_plus_classical"] =
        classical_output_intensity(chain.geometry, chain.spectrum, OutputDirection::right);
    write_text(args.out_dir + "/readout.json", j.dump(2) + "\n");
    write_manifest(args.out_dir, "readout",
                   {{"config", args.config_file}, {"preset", args.preset}}, {"readout.json"});
    return kExitOk;
}

int cmd_regime(const RegimeArgs& args) {
    const PhysicalParams p = preset_physical(args.preset);
    const std::string report = regime_report_json(p, args.omega_k);
    write_text(args.out_dir + "/regime.json", report + "\n");
    std::printf("%s\n", report.c_str());
    write_manifest(args.out_dir, "regime", {{"preset", args.preset}, {"omega_k", args.omega_k}},
                   {"regime.json"});
    return kExitOk;
}

}  // namespace fibersim::cli
