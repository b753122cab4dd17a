// fibersim command line tool.

#include <cstdio>
#include <exception>
#include <stdexcept>

#include <CLI11.hpp>

#include "commands.hpp"

namespace cli = fibersim::cli;

int main(int argc, char** argv) {
    CLI::App app{"Waveguide-mediated oscillator chain simulator and inverse designer"};
    app.set_version_flag("--version", cli::kVersion);
    app.require_subcommand(1);

    cli::DesignArgs design_args;
    auto* design = app.add_subcommand(
        "design", "Solve for a pump spectrum reproducing a target coupled system");
    design->add_option("--preset", design_args.preset, "Target preset: line3 | triangle");
    design->add_option("--target", design_args.target_file, "Target system JSON file");
    design->add_option("--fiber", design_args.fiber_positions,
                       "Fiber trap positions (lambda0 units, with --target)");
    design
        ->add_option("--mask", design_args.mask_pair,
                     "Suppress the interaction of one ion pair (two 1-based indices)")
        ->delimiter(',');
    design->add_option("--delta-k", design_args.delta_k, "Wavenumber spacing (k0 units)");
    design->add_option("-o,--out", design_args.out_dir, "Output directory");

    cli::FigureArgs figure_args;
    auto* figure = app.add_subcommand("figure", "Generate a predefined dataset");
    figure->add_option("name", figure_args.name, "fig2 | fig4 | fig5 | fig6 | fig7 | fig8")
        ->required();
    figure->add_option("-o,--out", figure_args.out_dir, "Output directory");

    cli::EvolveArgs evolve_args;
    auto* evolve = app.add_subcommand("evolve", "Propagate a Fock state");
    evolve->add_option("--config", evolve_args.config_file, "Chain config JSON");
    evolve->add_option("--preset", evolve_args.preset, "Chain preset: fig5 | fig6 | fig8");
    evolve->add_option("--state", evolve_args.state_file, "Initial state JSON");
    evolve->add_option("--initial", evolve_args.initial, "Initial occupation numbers");
    evolve->add_option("--cutoff", evolve_args.cutoff, "Per-mode Fock cutoff");
    evolve->add_option("-t,--time", evolve_args.time, "Evolution time (1/omega_T units)")
        ->required();
    evolve->add_option("-o,--out", evolve_args.out_dir, "Output directory");

    cli::EigsArgs eigs_args;
    auto* eigs = app.add_subcommand("eigs", "Excitation-sector eigenenergies");
    eigs->add_option("--config", eigs_args.config_file, "Chain config JSON");
    eigs->add_option("--preset", eigs_args.preset, "Chain preset");
    eigs->add_option("--sector", eigs_args.sector, "Excitation number (1 or 2)");
    eigs->add_option("-o,--out", eigs_args.out_dir, "Output directory");

    cli::EntropyArgs entropy_args;
    auto* entropy = app.add_subcommand("entropy", "Entanglement entropy along a trajectory");
    entropy->add_option("--config", entropy_args.config_file, "Chain config JSON");
    entropy->add_option("--preset", entropy_args.preset, "Chain preset");
    entropy->add_option("--initial", entropy_args.initial, "Initial occupation numbers");
    entropy->add_option("--cutoff", entropy_args.cutoff, "Per-mode Fock cutoff");
    entropy->add_option("--t-max", entropy_args.t_max, "Trajectory length");
    entropy->add_option("--steps", entropy_args.steps, "Number of time steps");
    entropy->add_option("--partitions", entropy_args.partitions,
                        "Semicolon-separated kept-mode sets, e.g. \"1;3;1,2\"");
    entropy->add_option("-o,--out", entropy_args.out_dir, "Output directory");

    cli::ReadoutArgs readout_args;
    auto* readout = app.add_subcommand("readout", "Output-field intensities for a state");
    readout->add_option("--config", readout_args.config_file, "Chain config JSON");
    readout->add_option("--preset", readout_args.preset, "Chain preset");
    readout->add_option("--state", readout_args.state_file, "State JSON");
    readout->add_option("--initial", readout_args.initial, "Occupation numbers");
    readout->add_option("--cutoff", readout_args.cutoff, "Per-mode Fock cutoff");
    readout->add_option("-o,--out", readout_args.out_dir, "Output directory");

    cli::RegimeArgs regime_args;
    auto* regime = app.add_subcommand("regime", "Operating-regime feasibility report");
    regime->add_option("--preset", regime_args.preset, "Physical parameter preset");
    regime->add_option("--omega-k", regime_args.omega_k, "Requested coupling rate (1/s)");
    regime->add_option("-o,--out", regime_args.out_dir, "Output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (design->parsed()) return cli::cmd_design(design_args);
        if (figure->parsed()) return cli::cmd_figure(figure_args);
        if (evolve->parsed()) return cli::cmd_evolve(evolve_args);
        if (eigs->parsed()) return cli::cmd_eigs(eigs_args);
        if (entropy->parsed()) return cli::cmd_entropy(entropy_args);
        if (readout->parsed()) return cli::cmd_readout(readout_args);
        if (regime->parsed()) return cli::cmd_regime(regime_args);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return cli::kExitConfig;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "guard tripped: %s\n", e.what());
        return cli::kExitGuard;
    } catch (const std::runtime_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return cli::kExitGuard;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return cli::kExitGuard;
    }
    return cli::kExitOk;
}
