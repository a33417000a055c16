#include "visco/experiments.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "visco/parallel.hpp"
#include "visco/properties.hpp"

namespace visco {

namespace {

namespace fs = std::filesystem;

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::vector<std::pair<std::string, std::string>> base_header(const ExperimentConfig& cfg) {
    std::ostringstream hash;
    hash << std::hex << cfg.hash();
    return {{"config_hash", hash.str()}, {"base_seed", std::to_string(cfg.base_seed)}};
}

std::ofstream open_out(const ExperimentConfig& cfg, const std::string& name) {
    fs::create_directories(cfg.output_dir);
    const fs::path path = fs::path(cfg.output_dir) / name;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file " + path.string());
    out.precision(17);
    return out;
}

void write_comment_header(std::ofstream& out, const ExperimentConfig& cfg,
                          const std::vector<std::pair<std::string, std::string>>& extra = {}) {
    for (const auto& [k, v] : base_header(cfg)) out << "# " << k << "=" << v << "\n";
    for (const auto& [k, v] : extra) out << "# " << k << "=" << v << "\n";
}

SecantOptions secant_options(const ExperimentConfig& cfg) {
    return {cfg.secant_tol, cfg.max_iter};
}

Trajectory run_one(const ExperimentConfig& cfg, double eps, double delta,
                   std::uint64_t realization) {
    const Environment env =
        sample_environment(cfg.table, eps, Seed{cfg.base_seed, realization});
    const Loading loading = Loading::cyclic(delta, cfg.periods);
    return run_trajectory(System::from_environment(env), loading, cfg.steps_per_period,
                          secant_options(cfg), cfg.stride);
}

void write_loop_rows(std::ofstream& out, const Trajectory& traj, double delta) {
    for (int p = 0; p < traj.period_count; ++p) {
        const LoopReport rep = loop_report(traj, p);
        out << delta << "," << p << "," << rep.area << "," << rep.dissipated << ","
            << rep.elastic_change << "," << (rep.limit_cycle ? 1 : 0) << "\n";
    }
}

}  // namespace

void cmd_run(const ExperimentConfig& cfg, std::ostream& log) {
    const double eps = cfg.eps_list.front();
    const double delta = cfg.delta_list.front();
    const Trajectory traj = run_one(cfg, eps, delta, 0);

    auto out = open_out(cfg, "run.csv");
    auto header = base_header(cfg);
    header.emplace_back("epsilon", num(eps));
    header.emplace_back("delta", num(delta));
    traj.write_csv(out, header);

    auto loops = open_out(cfg, "loop_report.csv");
    write_comment_header(loops, cfg);
    loops << "delta,period,area,dissipated,elastic_change,limit_cycle\n";
    write_loop_rows(loops, traj, delta);
    log << "run: " << traj.size() << " rows, max secant iterations "
        << traj.max_secant_iterations << ", max residual " << traj.max_residual << "\n";
}

void cmd_sweep_rates(const ExperimentConfig& cfg, std::ostream& log) {
    const double eps = cfg.eps_list.front();
    std::vector<Trajectory> trajectories(cfg.delta_list.size());
    parallel_for(static_cast<int>(cfg.delta_list.size()), cfg.jobs, [&](int k) {
        trajectories[k] = run_one(cfg, eps, cfg.delta_list[k], 0);
    });

    auto loops = open_out(cfg, "loop_areas.csv");
    write_comment_header(loops, cfg, {{"epsilon", num(eps)}});
    loops << "delta,period,area,dissipated,elastic_change,limit_cycle\n";
    for (std::size_t k = 0; k < cfg.delta_list.size(); ++k) {
        auto out = open_out(cfg, "sweep_" + std::to_string(k) + ".csv");
        auto header = base_header(cfg);
        header.emplace_back("epsilon", num(eps));
        header.emplace_back("delta", num(cfg.delta_list[k]));
        trajectories[k].write_csv(out, header);
        write_loop_rows(loops, trajectories[k], cfg.delta_list[k]);
        log << "sweep-rates: delta=" << cfg.delta_list[k] << " last-period area "
            << loop_area(trajectories[k], cfg.periods - 1) << "\n";
    }
}

void cmd_ensemble(const ExperimentConfig& cfg, std::ostream& log) {
    const double delta = cfg.delta_list.front();
    std::vector<double> variances(cfg.eps_list.size());

    auto var_out = open_out(cfg, "variance.csv");
    write_comment_header(var_out, cfg,
                         {{"delta", num(delta)}, {"observable_time", num(cfg.observable_time)}});
    var_out << "epsilon,variance,mean\n";

    for (std::size_t e = 0; e < cfg.eps_list.size(); ++e) {
        const double eps = cfg.eps_list[e];
        std::vector<Trajectory> trajectories(cfg.n_realizations);
        parallel_for(cfg.n_realizations, cfg.jobs, [&](int r) {
            trajectories[r] = run_one(cfg, eps, delta, static_cast<std::uint64_t>(r));
        });
        const EnsembleStats stats = ensemble_stats(trajectories);

        auto out = open_out(cfg, "stats_" + std::to_string(e) + ".csv");
        write_comment_header(out, cfg, {{"epsilon", num(eps)}, {"delta", num(delta)}});
        out << "t,mean_sigma,var_sigma\n";
        for (std::size_t k = 0; k < stats.times.size(); ++k)
            out << stats.times[k] << "," << stats.mean_sigma[k] << "," << stats.var_sigma[k]
                << "\n";

        // Variance observable at the configured time.
        std::size_t best = 0;
        for (std::size_t k = 1; k < stats.times.size(); ++k)
            if (std::abs(stats.times[k] - cfg.observable_time) <
                std::abs(stats.times[best] - cfg.observable_time))
                best = k;
        variances[e] = stats.var_sigma[best];
        var_out << eps << "," << variances[e] << "," << stats.mean_sigma[best] << "\n";
        log << "ensemble: eps=" << eps << " var(sigma, t=" << stats.times[best]
            << ")=" << variances[e] << "\n";
    }

    if (cfg.eps_list.size() >= 3) {
        const SlopeFit fit = fit_loglog(cfg.eps_list, variances);
        auto out = open_out(cfg, "slope_summary.csv");
        write_comment_header(out, cfg);
        out << "slope,intercept,r_squared\n";
        out << fit.slope << "," << fit.intercept << "," << fit.r_squared << "\n";
        log << "ensemble: log-log variance slope " << fit.slope << " (R^2 " << fit.r_squared
            << ")\n";
    }
}

void cmd_homogenize(const ExperimentConfig& cfg, std::ostream& log) {
    const double delta = cfg.delta_list.front();
    const Loading loading = Loading::cyclic(delta, cfg.periods);
    const auto atoms = enumerate_atoms(cfg.table);
    std::vector<std::vector<double>> thetas;
    const Trajectory traj = run_homogenized(atoms, loading, cfg.steps_per_period,
                                            secant_options(cfg), cfg.stride, &thetas);

    auto out = open_out(cfg, "homogenized.csv");
    auto header = base_header(cfg);
    header.emplace_back("homogenized", "true");
    header.emplace_back("delta", num(delta));
    header.emplace_back("n_atoms", std::to_string(atoms.size()));
    traj.write_csv(out, header);

    auto corr = open_out(cfg, "corrector.csv");
    write_comment_header(corr, cfg, {{"t", num(traj.t.back())}});
    corr << "member,probability,theta\n";
    for (std::size_t m = 0; m < atoms.size(); ++m)
        corr << m << "," << atoms[m].probability << "," << thetas.back()[m] << "\n";

    log << "homogenize: " << atoms.size() << " atoms, " << traj.size() << " rows\n";
    if (cfg.table.is_viscous()) {
        double max_err = 0.0;
        for (std::size_t k = 0; k < traj.size(); ++k) {
            const double macro = loading.ell(traj.t[k]);
            max_err = std::max(max_err,
                               std::abs(macro - closed_form_viscous(cfg.table, loading, traj.t[k])));
        }
        log << "homogenize: viscous closed-form macro-strain error " << max_err << "\n";
    }
}

void cmd_compare(const ExperimentConfig& cfg, std::ostream& log) {
    const double delta = cfg.delta_list.front();
    const Loading loading = Loading::cyclic(delta, cfg.periods);
    const auto results =
        compare_eps_to_homogenized(cfg.table, loading, cfg.eps_list, cfg.n_realizations,
                                   cfg.base_seed, cfg.steps_per_period, secant_options(cfg),
                                   cfg.jobs);
    auto out = open_out(cfg, "compare.csv");
    write_comment_header(out, cfg, {{"delta", num(delta)}});
    out << "epsilon,stress_error,displacement_error\n";
    for (const EpsComparison& r : results) {
        out << r.epsilon << "," << r.stress_error << "," << r.displacement_error << "\n";
        log << "compare: eps=" << r.epsilon << " stress_error=" << r.stress_error
            << " displacement_error=" << r.displacement_error << "\n";
    }
}

bool cmd_check(const ExperimentConfig& cfg, std::ostream& log) {
    const auto results = properties::run_all(cfg.table, cfg.base_seed);
    bool all_ok = true;
    auto out = open_out(cfg, "check.csv");
    write_comment_header(out, cfg);
    out << "property,pass,detail\n";
    for (const properties::Result& r : results) {
        all_ok = all_ok && r.ok;
        out << r.name << "," << (r.ok ? 1 : 0) << ",\"" << r.detail << "\"\n";
        log << (r.ok ? "PASS " : "FAIL ") << r.name;
        if (!r.ok) log << ": " << r.detail;
        log << "\n";
    }
    return all_ok;
}

int run_experiment(const ExperimentConfig& cfg, std::ostream& log) {
    cfg.validate();
    if (cfg.mode == "run") cmd_run(cfg, log);
    else if (cfg.mode == "sweep-rates") cmd_sweep_rates(cfg, log);
    else if (cfg.mode == "ensemble") cmd_ensemble(cfg, log);
    else if (cfg.mode == "homogenize") cmd_homogenize(cfg, log);
    else if (cfg.mode == "compare") cmd_compare(cfg, log);
    else if (cfg.mode == "check") return cmd_check(cfg, log) ? 0 : 2;
    return 0;
}

}  // namespace visco
