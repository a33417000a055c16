#pragma once

#include <iosfwd>

#include "visco/analysis.hpp"
#include "visco/config.hpp"
#include "visco/homogenized.hpp"

// Batch experiment drivers behind the CLI subcommands. All outputs are CSV
// files under config.output_dir with self-describing headers; results are
// byte-identical for a fixed config regardless of the number of jobs.

namespace visco {

// One realization, first eps and delta of the config. Writes run.csv and
// loop_report.csv.
void cmd_run(const ExperimentConfig& config, std::ostream& log);

// One trajectory per delta (fixed seed): sweep_<k>.csv plus loop_areas.csv.
void cmd_sweep_rates(const ExperimentConfig& config, std::ostream& log);

// Per eps: n_realizations trajectories, stats_<k>.csv (t, mean, variance),
// plus variance.csv and slope_summary.csv across eps.
void cmd_ensemble(const ExperimentConfig& config, std::ostream& log);

// Homogenized two-scale solve with exhaustive atom enumeration:
// homogenized.csv plus corrector.csv (final corrector snapshot). For viscous
// tables also logs the closed-form comparison.
void cmd_homogenize(const ExperimentConfig& config, std::ostream& log);

// Direct eps-simulations against the homogenized solve: compare.csv.
void cmd_compare(const ExperimentConfig& config, std::ostream& log);

// Property suites on randomized inputs; returns false on any failure.
bool cmd_check(const ExperimentConfig& config, std::ostream& log);

// Dispatch on config.mode. Returns a process exit code (0 success,
// 2 property failure).
int run_experiment(const ExperimentConfig& config, std::ostream& log);

}  // namespace visco
