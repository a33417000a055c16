#include "visco/analysis.hpp"

#include <cmath>

namespace visco {

namespace {

struct PeriodRange {
    std::size_t first;  // first record inside the period
    std::size_t last;   // last record inside the period (inclusive)
    std::size_t anchor; // record used as the period start point
};

// Records per period and the index range of one period. The trajectory stores
// the post-step samples only, so period 0 starts at its first record (one-step
// truncation); later periods anchor at the last record of the previous one.
PeriodRange period_range(const Trajectory& traj, int period_index) {
    if (traj.steps_per_period <= 0 || traj.size() == 0)
        throw std::invalid_argument("period_range: empty trajectory");
    const std::size_t rpp = traj.size() / static_cast<std::size_t>(traj.period_count);
    if (rpp * static_cast<std::size_t>(traj.period_count) != traj.size())
        throw std::invalid_argument("period_range: records not divisible into periods");
    if (period_index < 0 || period_index >= traj.period_count)
        throw std::out_of_range("period_range: period out of range");
    const std::size_t first = rpp * static_cast<std::size_t>(period_index);
    return {first, first + rpp - 1, period_index == 0 ? first : first - 1};
}

}  // namespace

double dissipated_energy(const Trajectory& traj, int period_index) {
    const PeriodRange r = period_range(traj, period_index);
    const double start = r.anchor == r.first ? (r.first == 0 ? 0.0 : traj.dissipated[r.first])
                                             : traj.dissipated[r.anchor];
    return traj.dissipated[r.last] - start;
}

double loop_area(const Trajectory& traj, int period_index) {
    const PeriodRange r = period_range(traj, period_index);
    double area = 0.0;
    for (std::size_t k = r.anchor; k < r.last; ++k)
        area += 0.5 * (traj.sigma[k] + traj.sigma[k + 1]) * (traj.ell[k + 1] - traj.ell[k]);
    return area;
}

LoopReport loop_report(const Trajectory& traj, int period_index) {
    const PeriodRange r = period_range(traj, period_index);
    LoopReport rep;
    rep.period_index = period_index;
    rep.area = loop_area(traj, period_index);
    rep.dissipated = dissipated_energy(traj, period_index);
    rep.elastic_change = traj.elastic[r.last] - traj.elastic[r.anchor];
    rep.limit_cycle = rep.dissipated > 0.0 && std::abs(rep.elastic_change) <= 0.01 * rep.dissipated;
    return rep;
}

EnsembleStats ensemble_stats(const std::vector<Trajectory>& trajectories) {
    if (trajectories.size() < 2)
        throw std::invalid_argument("ensemble_stats: need >= 2 trajectories");
    const std::size_t n_rec = trajectories.front().size();
    for (const Trajectory& tr : trajectories) {
        if (tr.size() != n_rec)
            throw std::invalid_argument("ensemble_stats: mismatched time grids");
        for (std::size_t k = 0; k < n_rec; ++k)
            if (tr.t[k] != trajectories.front().t[k])
                throw std::invalid_argument("ensemble_stats: mismatched time grids");
    }

    EnsembleStats stats;
    stats.n_realizations = static_cast<int>(trajectories.size());
    stats.times = trajectories.front().t;
    stats.mean_sigma.resize(n_rec);
    stats.var_sigma.resize(n_rec);
    const double n = static_cast<double>(trajectories.size());
    for (std::size_t k = 0; k < n_rec; ++k) {
        double mean = 0.0;
        for (const Trajectory& tr : trajectories) mean += tr.sigma[k];
        mean /= n;
        double ss = 0.0;
        for (const Trajectory& tr : trajectories) {
            const double d = tr.sigma[k] - mean;
            ss += d * d;
        }
        stats.mean_sigma[k] = mean;
        stats.var_sigma[k] = ss / (n - 1.0);
    }
    return stats;
}

SlopeFit fit_loglog(const std::vector<double>& eps_list, const std::vector<double>& variances) {
    if (eps_list.size() < 3 || eps_list.size() != variances.size())
        throw std::invalid_argument("fit_loglog: need >= 3 matched points");
    const std::size_t n = eps_list.size();
    std::vector<double> x(n), y(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (!(eps_list[k] > 0.0) || !(variances[k] > 0.0))
            throw std::invalid_argument("fit_loglog: eps and variances must be positive");
        x[k] = std::log(eps_list[k]);
        y[k] = std::log(variances[k]);
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        mx += x[k];
        my += y[k];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        sxx += (x[k] - mx) * (x[k] - mx);
        sxy += (x[k] - mx) * (y[k] - my);
        syy += (y[k] - my) * (y[k] - my);
    }
    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

double variance_slope(const std::vector<double>& eps_list, const std::vector<double>& variances) {
    return fit_loglog(eps_list, variances).slope;
}

double sigma_at(const Trajectory& traj, double t) {
    if (traj.size() == 0) throw std::invalid_argument("sigma_at: empty trajectory");
    std::size_t best = 0;
    double best_gap = std::abs(traj.t[0] - t);
    for (std::size_t k = 1; k < traj.size(); ++k) {
        const double gap = std::abs(traj.t[k] - t);
        if (gap < best_gap) {
            best = k;
            best_gap = gap;
        }
    }
    return traj.sigma[best];
}

}  // namespace visco
