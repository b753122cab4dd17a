// commands.hpp — CLI subcommand implementations. Every command writes its
// data files plus a manifest.json with the fully resolved configuration into
// the output directory and returns a process exit code (0 ok, 2 config
// error, 3 infeasible design, 4 numerical guard tripped).

#pragma once

#include <string>
#include <vector>

namespace fibersim::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitGuard = 4;

struct DesignArgs {
    std::string preset;       // line3 | triangle (or empty with target_file)
    std::string target_file;  // target system JSON
    std::vector<double> fiber_positions;
    std::vector<std::size_t> mask_pair;  // 1-based ion pair to suppress
    double delta_k = 0.0;                // 0 = preset default
    std::string out_dir = ".";
};
int cmd_design(const DesignArgs& args);

struct FigureArgs {
    std::string name;  // fig2 | fig4 | fig5 | fig6 | fig7 | fig8
    std::string out_dir = ".";
};
int cmd_figure(const FigureArgs& args);

struct EvolveArgs {
    std::string config_file;  // chain config JSON (or preset name)
    std::string preset;
    std::string state_file;             // input state JSON
    std::vector<std::size_t> initial;   // occupation numbers (alternative)
    std::size_t cutoff = 2;
    double time = 0.0;
    std::string out_dir = ".";
};
int cmd_evolve(const EvolveArgs& args);

struct EigsArgs {
    std::string config_file;
    std::string preset;
    int sector = 1;
    std::string out_dir = ".";
};
int cmd_eigs(const EigsArgs& args);

struct EntropyArgs {
    std::string config_file;
    std::string preset;
    std::vector<std::size_t> initial;
    std::size_t cutoff = 2;
    double t_max = 10.0;
    std::size_t steps = 400;
    std::string partitions = "1";  // semicolon-separated keep sets, 1-based
    std::string out_dir = ".";
};
int cmd_entropy(const EntropyArgs& args);

struct ReadoutArgs {
    std::string config_file;
    std::string preset;
    std::string state_file;
    std::vector<std::size_t> initial;
    std::size_t cutoff = 2;
    std::string out_dir = ".";
};
int cmd_readout(const ReadoutArgs& args);

struct RegimeArgs {
    std::string preset = "cesium";
    double omega_k = 1e4;  // requested coupling, 1/s
    std::string out_dir = ".";
};
int cmd_regime(const RegimeArgs& args);

}  // namespace fibersim::cli
