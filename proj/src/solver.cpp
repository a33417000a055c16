#include "visco/solver.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

namespace visco {

Loading Loading::cyclic(double delta, int periods) {
    if (!(delta > 0.0)) throw std::invalid_argument("Loading::cyclic: delta must be > 0");
    if (periods < 1) throw std::invalid_argument("Loading::cyclic: periods must be >= 1");
    const double w = 2.0 * std::numbers::pi * delta;
    Loading l;
    l.ell = [w](double t) { double s = std::sin(w * t); return s * s; };
    l.ell_dot = [w](double t) { return w * std::sin(2.0 * w * t); };
    l.period = 1.0 / (2.0 * delta);
    l.period_count = periods;
    return l;
}

Loading Loading::constant(double value) {
    Loading l;
    l.ell = [value](double) { return value; };
    l.ell_dot = [](double) { return 0.0; };
    l.period = 1.0;
    l.period_count = 1;
    return l;
}

System System::from_environment(const Environment& env) {
    System s;
    s.weight.reserve(env.size());
    s.a.reserve(env.size());
    s.mu.reserve(env.size());
    s.nu.reserve(env.size());
    for (const Cell& c : env.cells) {
        s.weight.push_back(c.weight);
        s.a.push_back(c.elastic.a);
        s.mu.push_back(c.dissipation.mu);
        s.nu.push_back(c.dissipation.nu);
    }
    return s;
}

SolverState SolverState::initial(const System& sys, const Loading& loading) {
    SolverState st;
    st.t = 0.0;
    st.S.assign(sys.size(), 0.0);
    st.Sigma.resize(sys.size());
    const double ell0 = loading.ell(0.0);
    double sigma0 = 0.0;
    for (std::size_t i = 0; i < sys.size(); ++i) {
        st.Sigma[i] = sys.a[i] * ell0;
        sigma0 += sys.weight[i] * st.Sigma[i];
    }
    st.sigma_bar = sigma0;
    return st;
}

Stepper::Stepper(System sys, SecantOptions opts)
    : sys_(std::move(sys)), opts_(opts), kernel_(kernels::active_kernel()) {
    if (sys_.size() == 0) throw std::invalid_argument("Stepper: empty system");
    if (!(opts_.tol > 0.0)) throw std::invalid_argument("Stepper: tol must be > 0");
    rates_.resize(sys_.size());
    inv_impedance_.resize(sys_.size());
}

kernels::StepContext Stepper::make_context(const SolverState& state, double dt, double d_ell) {
    if (!(dt > 0.0)) throw std::invalid_argument("Stepper: dt must be > 0");
    if (dt != inv_dt_) {
        for (std::size_t i = 0; i < sys_.size(); ++i)
            inv_impedance_[i] = 1.0 / (sys_.a[i] * dt + sys_.nu[i]);
        inv_dt_ = dt;
    }
    return {sys_.weight, sys_.mu, state.Sigma, inv_impedance_, d_ell};
}

double Stepper::rates_given_stress(const SolverState& state, double sigma_trial, double dt,
                                   double d_ell, std::vector<double>& rates) {
    rates.resize(sys_.size());
    const auto ctx = make_context(state, dt, d_ell);
    return kernel_.rates(ctx, sigma_trial, rates);
}

double Stepper::constraint_residual(const SolverState& state, double sigma_trial, double dt,
                                    double d_ell) {
    const auto ctx = make_context(state, dt, d_ell);
    return kernel_.residual(ctx, sigma_trial);
}

StepReport Stepper::find_stress(const SolverState& state, double dt, double d_ell) {
    const auto ctx = make_context(state, dt, d_ell);
    const double tol = opts_.tol;
    int iters = 0;
    auto eval = [&](double sigma) {
        ++iters;
        return kernel_.residual(ctx, sigma);
    };

    double x1 = state.sigma_bar;
    double f1 = eval(x1);
    if (std::abs(f1) <= tol) return {iters, f1, x1};

    // Establish a sign-changing bracket [lo, hi] with f(lo) <= 0 <= f(hi).
    // The residual is continuous, nondecreasing and affine with positive slope
    // outside every friction window, so doubling expansion terminates.
    double mu_max = 0.0;
    for (double m : sys_.mu) mu_max = std::max(mu_max, m);
    double radius = 1.0 + mu_max + std::abs(d_ell);
    double lo = x1, hi = x1, flo = f1, fhi = f1;
    while (flo > 0.0 || fhi < 0.0) {
        if (iters >= opts_.max_iter)
            throw SolverError("find_stress: failed to bracket the constraint residual");
        if (flo > 0.0) {
            lo -= radius;
            flo = eval(lo);
        } else {
            hi += radius;
            fhi = eval(hi);
        }
        radius *= 2.0;
    }
    if (std::abs(flo) <= tol) return {iters, flo, lo};
    if (std::abs(fhi) <= tol) return {iters, fhi, hi};

    // Safeguarded secant: secant steps accepted only inside the bracket,
    // otherwise bisect. The residual is piecewise linear with kinks at the
    // friction-window edges, so pure secant can stall there.
    double x0 = lo, f0 = flo;
    x1 = hi;
    f1 = fhi;
    while (iters < opts_.max_iter) {
        double x2;
        if (f1 != f0) {
            x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
            if (!std::isfinite(x2) || x2 <= lo || x2 >= hi) x2 = 0.5 * (lo + hi);
        } else {
            x2 = 0.5 * (lo + hi);
        }
        const double f2 = eval(x2);
        if (std::abs(f2) <= tol) return {iters, f2, x2};
        if (f2 < 0.0) {
            lo = x2;
        } else {
            hi = x2;
        }
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
        if (hi - lo <= 1e-15 * std::max(1.0, std::abs(lo))) {
            // Bracket exhausted at floating-point resolution.
            if (std::abs(f2) <= tol) return {iters, f2, x2};
            break;
        }
    }
    throw SolverError("find_stress: secant/bisection did not reach tolerance within max_iter");
}

StepReport Stepper::step(SolverState& state, const Loading& loading, double dt) {
    const double ell0 = loading.ell(state.t);
    const double ell1 = loading.ell(state.t + dt);
    const double d_ell = (ell1 - ell0) / dt;

    const StepReport report = find_stress(state, dt, d_ell);
    rates_given_stress(state, report.sigma_bar_new, dt, d_ell, rates_);

    double diss = 0.0;
    for (std::size_t i = 0; i < sys_.size(); ++i) {
        const double r = rates_[i] + d_ell;  // total strain rate in cell i
        diss += sys_.weight[i] * (sys_.nu[i] * r * r + sys_.mu[i] * std::abs(r));
        state.S[i] += dt * rates_[i];
        state.Sigma[i] = sys_.a[i] * (ell1 + state.S[i]);
    }
    last_dissipation_ = diss * dt;
    state.t += dt;
    state.sigma_bar = report.sigma_bar_new;
    return report;
}

double Stepper::elastic_energy(const SolverState& state, double ell) const {
    double e = 0.0;
    for (std::size_t i = 0; i < sys_.size(); ++i) {
        const double strain = ell + state.S[i];
        e += sys_.weight[i] * 0.5 * sys_.a[i] * strain * strain;
    }
    return e;
}

Trajectory run_trajectory(const System& sys, const Loading& loading, int steps_per_period,
                          SecantOptions opts, int stride,
                          const std::function<void(const SolverState&)>& observer) {
    if (steps_per_period < 1)
        throw std::invalid_argument("run_trajectory: steps_per_period must be >= 1");
    if (stride < 1) throw std::invalid_argument("run_trajectory: stride must be >= 1");

    Stepper stepper(sys, opts);
    SolverState state = SolverState::initial(sys, loading);

    const double dt = loading.period / steps_per_period;
    const long n_steps = static_cast<long>(steps_per_period) * loading.period_count;

    Trajectory traj;
    traj.dt = dt;
    traj.period = loading.period;
    traj.steps_per_period = steps_per_period;
    traj.period_count = loading.period_count;
    const std::size_t n_rec = static_cast<std::size_t>(n_steps / stride);
    traj.t.reserve(n_rec);
    traj.ell.reserve(n_rec);
    traj.sigma.reserve(n_rec);
    traj.elastic.reserve(n_rec);
    traj.dissipated.reserve(n_rec);

    double cumulative = 0.0;
    for (long j = 0; j < n_steps; ++j) {
        // Uniform grid computed from the origin to avoid drift.
        const double t_next = dt * static_cast<double>(j + 1);
        const double dt_j = t_next - state.t;
        const StepReport report = stepper.step(state, loading, dt_j);
        cumulative += stepper.last_dissipation_increment();
        traj.max_secant_iterations = std::max(traj.max_secant_iterations, report.secant_iterations);
        traj.max_residual = std::max(traj.max_residual, std::abs(report.residual));
        if ((j + 1) % stride == 0) {
            const double ell = loading.ell(state.t);
            traj.t.push_back(state.t);
            traj.ell.push_back(ell);
            traj.sigma.push_back(state.sigma_bar);
            traj.elastic.push_back(stepper.elastic_energy(state, ell));
            traj.dissipated.push_back(cumulative);
        }
        if (observer) observer(state);
    }
    return traj;
}

void Trajectory::write_csv(std::ostream& out,
                           const std::vector<std::pair<std::string, std::string>>& header_fields) const {
    out.precision(17);
    for (const auto& [k, v] : header_fields) out << "# " << k << "=" << v << "\n";
    out << "t,ell,sigma_bar,elastic_energy,dissipated_energy\n";
    for (std::size_t i = 0; i < t.size(); ++i)
        out << t[i] << "," << ell[i] << "," << sigma[i] << "," << elastic[i] << ","
            << dissipated[i] << "\n";
}

}  // namespace visco
