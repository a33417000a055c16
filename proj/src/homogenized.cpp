#include "visco/homogenized.hpp"

#include <cmath>

#include "visco/parallel.hpp"

namespace visco {

std::vector<OmegaAtom> enumerate_atoms(const ParameterTable& table) {
    table.validate();
    auto weight_of = [](const std::vector<double>& weights, std::size_t k, std::size_t n) {
        return weights.empty() ? 1.0 / static_cast<double>(n) : weights[k];
    };
    std::vector<OmegaAtom> atoms;
    atoms.reserve(table.a_values.size() * table.mu_values.size() * table.nu_values.size());
    for (std::size_t ia = 0; ia < table.a_values.size(); ++ia)
        for (std::size_t im = 0; im < table.mu_values.size(); ++im)
            for (std::size_t in = 0; in < table.nu_values.size(); ++in) {
                OmegaAtom atom;
                atom.elastic.a = table.a_values[ia];
                atom.dissipation.mu = table.mu_values[im];
                atom.dissipation.nu = table.nu_values[in];
                atom.probability = weight_of(table.a_weights, ia, table.a_values.size()) *
                                   weight_of(table.mu_weights, im, table.mu_values.size()) *
                                   weight_of(table.nu_weights, in, table.nu_values.size());
                atoms.push_back(atom);
            }
    return atoms;
}

System atom_system(const std::vector<OmegaAtom>& atoms) {
    if (atoms.empty()) throw std::invalid_argument("atom_system: empty atom list");
    System s;
    for (const OmegaAtom& a : atoms) {
        s.weight.push_back(a.probability);
        s.a.push_back(a.elastic.a);
        s.mu.push_back(a.dissipation.mu);
        s.nu.push_back(a.dissipation.nu);
    }
    return s;
}

OmegaSample OmegaSample::initial(std::vector<OmegaAtom> atoms) {
    OmegaSample s;
    s.thetas.assign(atoms.size(), 0.0);
    s.atoms = std::move(atoms);
    return s;
}

double OmegaSample::mean_theta() const {
    double m = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) m += atoms[i].probability * thetas[i];
    return m;
}

HomogenizedStepper::HomogenizedStepper(std::vector<OmegaAtom> atoms, SecantOptions opts)
    : sample_(OmegaSample::initial(std::move(atoms))),
      stepper_(atom_system(sample_.atoms), opts),
      state_() {}

StepReport HomogenizedStepper::step(const Loading& loading, double dt) {
    if (!started_) {
        state_ = SolverState::initial(stepper_.system(), loading);
        macro_.t = 0.0;
        macro_.macro_strain = loading.ell(0.0);
        macro_.stress = state_.sigma_bar;
        started_ = true;
    }
    // The member strain is e(omega) = macro + theta(omega) = ell(t) + S(omega):
    // the solver's relative strains are exactly the corrector values, and its
    // probability-weighted constraint keeps E[theta] = 0.
    const StepReport report = stepper_.step(state_, loading, dt);
    sample_.thetas = state_.S;
    macro_.t = state_.t;
    macro_.macro_strain = loading.ell(state_.t);
    macro_.stress = state_.sigma_bar;
    return report;
}

Trajectory run_homogenized(const std::vector<OmegaAtom>& atoms, const Loading& loading,
                           int steps_per_period, SecantOptions opts, int stride,
                           std::vector<std::vector<double>>* theta_snapshots) {
    const System sys = atom_system(atoms);
    std::function<void(const SolverState&)> observer = nullptr;
    if (theta_snapshots) {
        theta_snapshots->clear();
        observer = [theta_snapshots](const SolverState& st) { theta_snapshots->push_back(st.S); };
    }
    return run_trajectory(sys, loading, steps_per_period, opts, stride, observer);
}

double h_star(const ParameterTable& table, double t) {
    double h = 0.0;
    for (const OmegaAtom& a : enumerate_atoms(table))
        h += a.probability * std::exp(-a.elastic.a / a.dissipation.nu * t);
    return h;
}

double g_star(const ParameterTable& table, double s) {
    double g = 0.0;
    for (const OmegaAtom& a : enumerate_atoms(table))
        g += a.probability / a.dissipation.nu * std::exp(a.elastic.a / a.dissipation.nu * s);
    return g;
}

double closed_form_viscous(const ParameterTable& table, const Loading& loading, double t,
                           double initial_strain) {
    if (!table.is_viscous())
        throw std::invalid_argument("closed_form_viscous: table must have mu == 0");
    return (initial_strain - loading.ell(0.0)) * h_star(table, t) + loading.ell(t);
}

std::vector<double> volterra_stress(const ParameterTable& table, const Loading& loading,
                                    const std::vector<double>& t_grid) {
    if (!table.is_viscous())
        throw std::invalid_argument("volterra_stress: table must have mu == 0");
    if (t_grid.empty()) return {};
    const std::size_t n = t_grid.size();
    const double ell0 = loading.ell(0.0);

    // Sigma(0) from the pointwise stress relation at t = 0: the initial strain
    // is uniform (= ell(0)) and the mean strain rate is ell_dot(0).
    double mean_inv_nu = 0.0, mean_a_over_nu = 0.0;
    for (const OmegaAtom& a : enumerate_atoms(table)) {
        mean_inv_nu += a.probability / a.dissipation.nu;
        mean_a_over_nu += a.probability * a.elastic.a / a.dissipation.nu;
    }
    std::vector<double> sigma(n);
    sigma[0] = (loading.ell_dot(t_grid[0]) + mean_a_over_nu * ell0) / mean_inv_nu;

    // Trapezoid discretization of ell(t_n) = ell(0) h*(t_n) +
    // int_0^{t_n} Sigma(s) g*(s - t_n) ds, solved forward for Sigma(t_n).
    for (std::size_t m = 1; m < n; ++m) {
        const double tn = t_grid[m];
        double integral = 0.0;
        for (std::size_t k = 0; k + 1 < m; ++k) {
            const double dt = t_grid[k + 1] - t_grid[k];
            integral += 0.5 * dt *
                        (sigma[k] * g_star(table, t_grid[k] - tn) +
                         sigma[k + 1] * g_star(table, t_grid[k + 1] - tn));
        }
        const double dt_last = t_grid[m] - t_grid[m - 1];
        integral += 0.5 * dt_last * sigma[m - 1] * g_star(table, t_grid[m - 1] - tn);
        const double coeff = 0.5 * dt_last * g_star(table, 0.0);
        sigma[m] = (loading.ell(tn) - ell0 * h_star(table, tn) - integral) / coeff;
    }
    return sigma;
}

std::vector<EpsComparison> compare_eps_to_homogenized(const ParameterTable& table,
                                                      const Loading& loading,
                                                      const std::vector<double>& eps_list,
                                                      int n_realizations, std::uint64_t base_seed,
                                                      int steps_per_period, SecantOptions opts,
                                                      int jobs) {
    if (n_realizations < 1)
        throw std::invalid_argument("compare_eps_to_homogenized: need >= 1 realization");

    const Trajectory hom = run_homogenized(enumerate_atoms(table), loading, steps_per_period, opts);
    const std::size_t n_rec = hom.size();

    std::vector<EpsComparison> results(eps_list.size());
    for (std::size_t e = 0; e < eps_list.size(); ++e) {
        const double eps = eps_list[e];
        std::vector<std::vector<double>> stress(n_realizations);
        std::vector<double> disp_sup(n_realizations, 0.0);
        parallel_for(n_realizations, jobs, [&](int r) {
            const Environment env = sample_environment(
                table, eps, Seed{base_seed, static_cast<std::uint64_t>(r)});
            const System sys = System::from_environment(env);
            double sup_u = 0.0;
            auto observer = [&](const SolverState& st) {
                // Displacement fluctuation u(x_k) = sum_{i<=k} w_i S_i;
                // the homogenized displacement has none.
                double partial = 0.0;
                for (std::size_t i = 0; i < sys.size(); ++i) {
                    partial += sys.weight[i] * st.S[i];
                    sup_u = std::max(sup_u, std::abs(partial));
                }
            };
            const Trajectory traj =
                run_trajectory(sys, loading, steps_per_period, opts, 1, observer);
            stress[r] = traj.sigma;
            disp_sup[r] = sup_u;
        });

        EpsComparison cmp;
        cmp.epsilon = eps;
        for (std::size_t k = 0; k < n_rec; ++k) {
            double mean = 0.0;
            for (int r = 0; r < n_realizations; ++r) mean += stress[r][k];
            mean /= n_realizations;
            cmp.stress_error = std::max(cmp.stress_error, std::abs(mean - hom.sigma[k]));
        }
        for (int r = 0; r < n_realizations; ++r)
            cmp.displacement_error += disp_sup[r] / n_realizations;
        results[e] = cmp;
    }
    return results;
}

}  // namespace visco
