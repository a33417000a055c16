#pragma once

#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "visco/environment.hpp"
#include "visco/kernels.hpp"

// Time stepping for the discretized evolution: at each step, solve the
// per-cell implicit inclusion for the strain rates given a trial total stress,
// and pick the total stress so the weighted rates sum to zero (the clamped-end
// boundary condition), via a bracket-safeguarded secant iteration.

namespace visco {

struct Loading {
    std::function<double(double)> ell;
    std::function<double(double)> ell_dot;
    double period = 1.0;
    int period_count = 1;

    // ell(t) = sin^2(2 pi delta t); one loading period is 1/(2 delta).
    static Loading cyclic(double delta, int periods);
    static Loading constant(double value);

    double duration() const { return period * period_count; }
};

struct System {
    std::vector<double> weight;
    std::vector<double> a;
    std::vector<double> mu;
    std::vector<double> nu;

    std::size_t size() const { return weight.size(); }
    static System from_environment(const Environment& env);
};

struct SolverState {
    double t = 0.0;
    std::vector<double> S;      // per-cell relative strains
    std::vector<double> Sigma;  // per-cell elastic stresses A_i (ell + S_i)
    double sigma_bar = 0.0;

    static SolverState initial(const System& sys, const Loading& loading);
};

struct StepReport {
    int secant_iterations = 0;
    double residual = 0.0;
    double sigma_bar_new = 0.0;
};

struct SecantOptions {
    double tol = 1e-10;
    int max_iter = 200;
};

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Trajectory {
    double dt = 0.0;
    double period = 0.0;
    int steps_per_period = 0;
    int period_count = 0;
    std::vector<double> t;
    std::vector<double> ell;
    std::vector<double> sigma;
    std::vector<double> elastic;     // elastic energy
    std::vector<double> dissipated;  // cumulative dissipated energy
    int max_secant_iterations = 0;
    double max_residual = 0.0;

    std::size_t size() const { return t.size(); }
    // CSV with columns t, ell, sigma_bar, elastic_energy, dissipated_energy.
    // `header_fields` are emitted as "# key=value" comment lines.
    void write_csv(std::ostream& out,
                   const std::vector<std::pair<std::string, std::string>>& header_fields = {}) const;
};

// Stateful stepper owning scratch buffers; one per trajectory/thread.
class Stepper {
public:
    Stepper(System sys, SecantOptions opts = {});

    const System& system() const { return sys_; }
    const SecantOptions& options() const { return opts_; }

    // Rates dS for a trial total stress; returns the constraint residual
    // sum_i w_i dS_i. `state.Sigma` must be consistent with `state.S`.
    double rates_given_stress(const SolverState& state, double sigma_trial, double dt,
                              double d_ell, std::vector<double>& rates);
    double constraint_residual(const SolverState& state, double sigma_trial, double dt,
                               double d_ell);

    // Solve constraint_residual(sigma) = 0, warm-started at state.sigma_bar.
    // Throws SolverError when the tolerance is not reached within max_iter.
    StepReport find_stress(const SolverState& state, double dt, double d_ell);

    // Advance one step; returns the report plus the dissipation increment.
    StepReport step(SolverState& state, const Loading& loading, double dt);

    double last_dissipation_increment() const { return last_dissipation_; }

    double elastic_energy(const SolverState& state, double ell) const;

private:
    kernels::StepContext make_context(const SolverState& state, double dt, double d_ell);

    System sys_;
    SecantOptions opts_;
    const kernels::Kernel& kernel_;
    std::vector<double> inv_impedance_;
    double inv_dt_ = -1.0;  // dt for which inv_impedance_ is valid
    std::vector<double> rates_;
    double last_dissipation_ = 0.0;
};

// Integrate from S = 0 over period_count periods with steps_per_period uniform
// steps; records every `stride`-th step. `observer` (optional) sees the state
// after each accepted step.
Trajectory run_trajectory(const System& sys, const Loading& loading, int steps_per_period,
                          SecantOptions opts = {}, int stride = 1,
                          const std::function<void(const SolverState&)>& observer = nullptr);

}  // namespace visco
