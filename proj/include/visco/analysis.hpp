#pragma once

#include <vector>

#include "visco/solver.hpp"

// Post-processing of trajectories and ensembles: dissipated energy and
// hysteresis-loop area per loading period, ensemble mean/variance curves, and
// the log-log slope of the stress variance versus the microscale.

namespace visco {

struct EnsembleStats {
    std::vector<double> times;
    std::vector<double> mean_sigma;
    std::vector<double> var_sigma;  // unbiased
    int n_realizations = 0;
};

struct LoopReport {
    int period_index = 0;
    double area = 0.0;        // loop integral of sigma_bar d ell over the period
    double dissipated = 0.0;  // dissipation accumulated over the period
    double elastic_change = 0.0;
    bool limit_cycle = false;  // |elastic_change| <= 1% of dissipated
};

// Dissipation accumulated over loading period `period_index` (0-based).
double dissipated_energy(const Trajectory& traj, int period_index);

// Line integral of sigma_bar d ell over the period (trapezoid/shoelace).
double loop_area(const Trajectory& traj, int period_index);

LoopReport loop_report(const Trajectory& traj, int period_index);

// Pointwise mean and unbiased variance of sigma_bar across realizations;
// requires >= 2 trajectories on matching time grids.
EnsembleStats ensemble_stats(const std::vector<Trajectory>& trajectories);

// Least-squares slope of log(var) against log(eps); needs >= 3 points and
// positive variances.
double variance_slope(const std::vector<double>& eps_list, const std::vector<double>& variances);

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

SlopeFit fit_loglog(const std::vector<double>& eps_list, const std::vector<double>& variances);

// Value of sigma_bar at time `t` (nearest recorded sample).
double sigma_at(const Trajectory& traj, double t);

}  // namespace visco
