#pragma once

#include <vector>

#include "visco/solver.hpp"

// The two-scale limit in 1D under uniform cyclic loading: per probability atom
// omega, the corrector strain theta(omega) obeys the same implicit inclusion
// as a material cell, driven by a spatially constant stress Sigma(t) chosen so
// that the mean total strain equals the imposed elongation. The finite cell
// law is enumerated exactly, so the only errors are in time discretization.
// For purely viscous media the limit has a closed form through the relaxation
// kernels h*(t) and g*(s), used here as an independent oracle.

namespace visco {

struct OmegaAtom {
    ElasticParams elastic;
    DissipationParams dissipation;
    double probability = 0.0;
};

// All (a, mu, nu) combinations of the table with product probabilities.
std::vector<OmegaAtom> enumerate_atoms(const ParameterTable& table);

struct OmegaSample {
    std::vector<OmegaAtom> atoms;
    std::vector<double> thetas;  // corrector strains, probability-mean zero

    static OmegaSample initial(std::vector<OmegaAtom> atoms);
    double mean_theta() const;
};

struct MacroState {
    double t = 0.0;
    double macro_strain = 0.0;  // mean total strain, equals ell(t)/|D|
    double stress = 0.0;        // the omega-independent stress Sigma(t)
};

// System whose "cells" are the probability atoms; the solver's weighted
// constraint then enforces the zero-mean corrector condition.
System atom_system(const std::vector<OmegaAtom>& atoms);

class HomogenizedStepper {
public:
    HomogenizedStepper(std::vector<OmegaAtom> atoms, SecantOptions opts = {});

    const OmegaSample& sample() const { return sample_; }
    const MacroState& macro() const { return macro_; }

    StepReport step(const Loading& loading, double dt);
    double last_dissipation_increment() const { return stepper_.last_dissipation_increment(); }

private:
    OmegaSample sample_;
    MacroState macro_;
    Stepper stepper_;
    SolverState state_;
    bool started_ = false;
};

// Full homogenized trajectory (Sigma(t) in the sigma column), starting from
// theta = 0. Shares the Trajectory CSV schema with the direct solver.
Trajectory run_homogenized(const std::vector<OmegaAtom>& atoms, const Loading& loading,
                           int steps_per_period, SecantOptions opts = {}, int stride = 1,
                           std::vector<std::vector<double>>* theta_snapshots = nullptr);

// Relaxation kernels of the viscous limit, as exact finite expectations.
// h*(t) = E[exp(-A0/nu0 t)], g*(s) = E[exp(A0/nu0 s)/nu0] (s <= 0 in use).
double h_star(const ParameterTable& table, double t);
double g_star(const ParameterTable& table, double s);

// Closed-form macro strain for mu == 0 tables with spatially uniform initial
// strain: (initial_strain - ell(0)/|D|) h*(t) + ell(t)/|D|, |D| = 1.
// Throws if the table has any positive friction threshold.
double closed_form_viscous(const ParameterTable& table, const Loading& loading, double t,
                           double initial_strain = 0.0);

// Stress Sigma(t) of the viscous limit on a uniform grid, from the Volterra
// relation ell(t) = ell(0) h*(t) + int_0^t Sigma(s) g*(s-t) ds (trapezoid).
std::vector<double> volterra_stress(const ParameterTable& table, const Loading& loading,
                                    const std::vector<double>& t_grid);

struct EpsComparison {
    double epsilon = 0.0;
    double stress_error = 0.0;        // sup_t |mean_realizations sigma^eps - Sigma|
    double displacement_error = 0.0;  // mean_realizations sup_{t,x} |u^eps(t,x)|
};

// Direct eps-simulations versus the homogenized solve, matched time grids.
std::vector<EpsComparison> compare_eps_to_homogenized(const ParameterTable& table,
                                                      const Loading& loading,
                                                      const std::vector<double>& eps_list,
                                                      int n_realizations, std::uint64_t base_seed,
                                                      int steps_per_period,
                                                      SecantOptions opts = {}, int jobs = 1);

}  // namespace visco
