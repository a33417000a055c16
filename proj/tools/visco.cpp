// Command-line experiment runner for the 1D random viscoelastic medium.
//
// Exit codes: 0 success, 1 validation error, 2 property failure,
// 3 solver non-convergence.

#include <iostream>

#include <CLI11.hpp>

#include "visco/experiments.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string preset;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int jobs = 0;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "Path to a key = value config file");
    cmd->add_option("--preset", flags.preset,
                    "Named preset: figure2, figure3, figure4 (or *-full)");
    cmd->add_option("--out", flags.out_dir, "Output directory");
    cmd->add_option("--seed", flags.seed, "Base seed")->each([&](const std::string&) {
        flags.seed_set = true;
    });
    cmd->add_option("--jobs", flags.jobs, "Worker threads");
}

visco::ExperimentConfig build_config(const CommonFlags& flags, const std::string& mode) {
    visco::ExperimentConfig cfg;
    if (!flags.preset.empty()) cfg = visco::ExperimentConfig::preset(flags.preset);
    if (!flags.config_path.empty()) cfg = visco::ExperimentConfig::parse_file(flags.config_path);
    cfg.mode = mode;
    if (!flags.out_dir.empty()) cfg.output_dir = flags.out_dir;
    if (flags.seed_set) cfg.base_seed = flags.seed;
    if (flags.jobs > 0) cfg.jobs = flags.jobs;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"1D random viscoelastic medium: cyclic-loading experiments"};
    app.require_subcommand(1);

    const std::vector<std::string> modes = {"run",        "sweep-rates", "ensemble",
                                            "homogenize", "compare",     "check"};
    const std::vector<std::string> descriptions = {
        "Single trajectory for one realization",
        "One trajectory per loading rate, fixed realization",
        "Realization ensemble per microscale eps; stats and variance slope",
        "Two-scale homogenized solve (exhaustive atom enumeration)",
        "Direct eps-simulations versus the homogenized limit",
        "Randomized property suites"};

    std::vector<CommonFlags> flags(modes.size());
    for (std::size_t m = 0; m < modes.size(); ++m)
        add_common(app.add_subcommand(modes[m], descriptions[m]), flags[m]);

    CLI11_PARSE(app, argc, argv);

    for (std::size_t m = 0; m < modes.size(); ++m) {
        if (!app.get_subcommand(modes[m])->parsed()) continue;
        try {
            const visco::ExperimentConfig cfg = build_config(flags[m], modes[m]);
            return visco::run_experiment(cfg, std::cout);
        } catch (const visco::SolverError& e) {
            std::cerr << "solver error: " << e.what() << "\n";
            return 3;
        } catch (const std::invalid_argument& e) {
            std::cerr << "invalid configuration: " << e.what() << "\n";
            return 1;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }
    return 1;
}
