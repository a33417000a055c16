#include "visco/properties.hpp"

#include <cmath>
#include <sstream>

#include "visco/constitutive.hpp"
#include "visco/solver.hpp"

namespace visco::properties {

namespace {

struct Draw {
    rng::Key key;
    std::uint64_t counter = 0;

    double uniform(double lo, double hi) { return lo + (hi - lo) * key.uniform01(99, counter++); }
    std::uint64_t index(std::uint64_t n) { return key.index(98, counter++, n); }
};

DissipationParams random_params(const ParameterTable& table, Draw& d) {
    DissipationParams p;
    p.mu = table.mu_values[d.index(table.mu_values.size())];
    p.nu = table.nu_values[d.index(table.nu_values.size())];
    return p;
}

std::string describe(DissipationParams p, double xi, double sigma) {
    std::ostringstream os;
    os.precision(17);
    os << "mu=" << p.mu << " nu=" << p.nu << " xi=" << xi << " sigma=" << sigma;
    return os.str();
}

}  // namespace

Result fenchel_young(const ParameterTable& table, std::uint64_t seed, int n,
                     PsiStarFn psi_star_fn) {
    if (!psi_star_fn) psi_star_fn = [](DissipationParams p, double s) { return psi_star(p, s); };
    Draw d{rng::Key{seed, 1}};
    const double tol = 1e-9;
    for (int k = 0; k < n; ++k) {
        DissipationParams p;
        p.mu = d.uniform(0.0, table.max_mu() + 0.5);
        p.nu = d.uniform(table.min_nu(), table.max_nu() + 0.5);
        const double xi = d.uniform(-5.0, 5.0);
        const double sigma = d.uniform(-5.0, 5.0);
        const double gap = psi(p, xi) + psi_star_fn(p, sigma) - sigma * xi;
        if (gap < -tol)
            return {"fenchel_young", false, "inequality violated at " + describe(p, xi, sigma)};
        const Subdifferential sub = subdiff_psi(p, xi);
        const bool in_sub = sub.lo - tol <= sigma && sigma <= sub.hi + tol;
        if (in_sub && gap > 1e-6)
            return {"fenchel_young", false,
                    "no equality despite sigma in subdifferential at " + describe(p, xi, sigma)};
        // Constructed equality case: a stress drawn from the subdifferential
        // must close the Fenchel-Young gap.
        const double sigma_eq = sub.lo + (sub.hi - sub.lo) * d.uniform(0.0, 1.0);
        const double gap_eq = psi(p, xi) + psi_star_fn(p, sigma_eq) - sigma_eq * xi;
        if (std::abs(gap_eq) > 1e-6)
            return {"fenchel_young", false,
                    "no equality at subdifferential point " + describe(p, xi, sigma_eq)};
        // Reverse direction needs |xi| bounded away from the kink: for tiny
        // xi the gap scales like mu |xi| and cannot separate the interval.
        if (gap <= tol && std::abs(xi) >= 1e-3 &&
            !(sub.lo - 1e-3 <= sigma && sigma <= sub.hi + 1e-3))
            return {"fenchel_young", false,
                    "equality outside subdifferential at " + describe(p, xi, sigma)};
    }
    return {"fenchel_young", true, ""};
}

Result duality_inversion(const ParameterTable& table, std::uint64_t seed, int n) {
    Draw d{rng::Key{seed, 2}};
    for (int k = 0; k < n; ++k) {
        const DissipationParams p = random_params(table, d);
        // forward: sigma in subdiff(xi) -> d_psi_star(sigma) == xi
        const double xi = d.uniform(-4.0, 4.0);
        const Subdifferential sub = subdiff_psi(p, xi);
        const double sigma = sub.lo + (sub.hi - sub.lo) * d.uniform(0.0, 1.0);
        if (std::abs(d_psi_star(p, sigma) - xi) > 1e-9)
            return {"duality_inversion", false, "forward failed at " + describe(p, xi, sigma)};
        // backward: xi = d_psi_star(sigma) -> sigma in subdiff(xi)
        const double s2 = d.uniform(-4.0, 4.0);
        const double xi2 = d_psi_star(p, s2);
        const Subdifferential sub2 = subdiff_psi(p, xi2);
        if (!(sub2.lo - 1e-9 <= s2 && s2 <= sub2.hi + 1e-9))
            return {"duality_inversion", false, "backward failed at " + describe(p, xi2, s2)};
    }
    return {"duality_inversion", true, ""};
}

Result moreau_sandwich(const ParameterTable& table, std::uint64_t seed, int n) {
    Draw d{rng::Key{seed, 3}};
    const double C = table.growth_C();
    const double etas[] = {1.0, 0.1, 0.01};
    for (int k = 0; k < n; ++k) {
        const DissipationParams p = random_params(table, d);
        const double xi = d.uniform(-5.0, 5.0);
        for (double eta : etas) {
            const double lo = psi_eta(p, eta, xi);
            const double hi = psi(p, xi);
            if (!(lo >= -1e-12 && lo <= hi + 1e-12 &&
                  hi <= lo + 8.0 * eta * C * C * (1.0 + xi * xi) + 1e-12))
                return {"moreau_sandwich", false,
                        "eta=" + std::to_string(eta) + " at " + describe(p, xi, 0.0)};
        }
    }
    return {"moreau_sandwich", true, ""};
}

Result moreau_gradient_bound(const ParameterTable& table, std::uint64_t seed, int n) {
    Draw d{rng::Key{seed, 4}};
    const double bound_C = 4.0 * table.growth_C();
    const double etas[] = {1.0, 0.1, 0.01};
    for (int k = 0; k < n; ++k) {
        const DissipationParams p = random_params(table, d);
        const double xi = d.uniform(-5.0, 5.0);
        for (double eta : etas) {
            const double g = d_psi_eta(p, eta, xi);
            if (std::abs(g) > bound_C * (1.0 + std::abs(xi)) + 1e-9)
                return {"moreau_gradient_bound", false,
                        "analytic gradient, eta=" + std::to_string(eta) + " at " +
                            describe(p, xi, 0.0)};
            const double h = 1e-6;
            const double fd = (psi_eta(p, eta, xi + h) - psi_eta(p, eta, xi - h)) / (2.0 * h);
            if (std::abs(fd) > bound_C * (1.0 + std::abs(xi)) + 1e-4)
                return {"moreau_gradient_bound", false,
                        "finite difference, eta=" + std::to_string(eta) + " at " +
                            describe(p, xi, 0.0)};
            if (std::abs(fd - g) > 1e-4 * (1.0 + std::abs(g)))
                return {"moreau_gradient_bound", false,
                        "gradient inconsistent with finite differences at " +
                            describe(p, xi, 0.0)};
        }
    }
    return {"moreau_gradient_bound", true, ""};
}

Result conjugate_ordering(const ParameterTable& table, std::uint64_t seed, int n) {
    Draw d{rng::Key{seed, 5}};
    const double C = table.growth_C();
    const double c = table.strong_convexity_c();
    const double eta_max = c / (16.0 * C * C);
    const double etas[] = {eta_max, eta_max / 2.0, eta_max / 10.0};
    for (int k = 0; k < n; ++k) {
        const DissipationParams p = random_params(table, d);
        const double sigma = d.uniform(-5.0, 5.0);
        for (double eta : etas) {
            const double m_eta = 1.0 - 8.0 * eta * C * C / c;
            const double upper = psi_eta_star(p, eta, sigma);
            const double mid = psi_star(p, sigma);
            const double lower = psi_eta_star(p, eta, m_eta * sigma) / m_eta -
                                 8.0 * eta * C * C / m_eta;
            if (!(upper >= mid - 1e-12 && mid >= lower - 1e-12))
                return {"conjugate_ordering", false,
                        "eta=" + std::to_string(eta) + " at " + describe(p, 0.0, sigma)};
        }
    }
    return {"conjugate_ordering", true, ""};
}

Result rate_map_regularity(const ParameterTable& table, std::uint64_t seed, int n) {
    Draw d{rng::Key{seed, 6}};
    for (int k = 0; k < n; ++k) {
        const DissipationParams p = random_params(table, d);
        double s1 = d.uniform(-5.0, 5.0);
        double s2 = d.uniform(-5.0, 5.0);
        if (s2 < s1) std::swap(s1, s2);
        const double r1 = d_psi_star(p, s1);
        const double r2 = d_psi_star(p, s2);
        if (r2 < r1 - 1e-12)
            return {"rate_map_regularity", false, "not monotone at " + describe(p, 0.0, s1)};
        if (std::abs(r2 - r1) > (s2 - s1) / p.nu + 1e-12)
            return {"rate_map_regularity", false, "not 1/nu-Lipschitz at " + describe(p, 0.0, s1)};
    }
    return {"rate_map_regularity", true, ""};
}

Result rate_monotonicity(const ParameterTable& table, std::uint64_t seed, int n) {
    Draw d{rng::Key{seed, 7}};
    const std::size_t n_cells = 16;
    for (int k = 0; k < n; ++k) {
        System sys;
        for (std::size_t i = 0; i < n_cells; ++i) {
            const DissipationParams p = random_params(table, d);
            sys.weight.push_back(1.0 / n_cells);
            sys.a.push_back(table.a_values[d.index(table.a_values.size())]);
            sys.mu.push_back(p.mu);
            sys.nu.push_back(p.nu);
        }
        Stepper stepper(sys);
        SolverState st;
        st.t = 0.0;
        const double ell = d.uniform(0.0, 1.0);
        st.S.resize(n_cells);
        st.Sigma.resize(n_cells);
        for (std::size_t i = 0; i < n_cells; ++i) {
            st.S[i] = d.uniform(-1.0, 1.0);
            st.Sigma[i] = sys.a[i] * (ell + st.S[i]);
        }
        st.sigma_bar = 0.0;
        const double dt = d.uniform(1e-4, 1e-2);
        const double d_ell = d.uniform(-1.0, 1.0);
        double sa = d.uniform(-3.0, 3.0);
        double sb = d.uniform(-3.0, 3.0);
        if (sb < sa) std::swap(sa, sb);
        std::vector<double> ra, rb;
        stepper.rates_given_stress(st, sa, dt, d_ell, ra);
        stepper.rates_given_stress(st, sb, dt, d_ell, rb);
        for (std::size_t i = 0; i < n_cells; ++i)
            if (rb[i] < ra[i] - 1e-12) {
                std::ostringstream os;
                os << "cell " << i << " sigma_a=" << sa << " sigma_b=" << sb;
                return {"rate_monotonicity", false, os.str()};
            }
    }
    return {"rate_monotonicity", true, ""};
}

Result weight_partition(const ParameterTable& table, std::uint64_t seed, int n) {
    Draw d{rng::Key{seed, 8}};
    for (int k = 0; k < n; ++k) {
        const double eps = d.uniform(1e-3, 1.0);
        const Environment env =
            sample_environment(table, eps, Seed{seed, static_cast<std::uint64_t>(k)});
        if (std::abs(env.total_weight() - 1.0) > 1e-12) {
            std::ostringstream os;
            os.precision(17);
            os << "eps=" << eps << " shift=" << env.shift << " sum=" << env.total_weight();
            return {"weight_partition", false, os.str()};
        }
    }
    return {"weight_partition", true, ""};
}

Result seed_determinism(const ParameterTable& table, std::uint64_t seed, int n) {
    for (int k = 0; k < n; ++k) {
        const Seed s{seed + static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(k)};
        const Environment a = sample_environment(table, 1.0 / 50, s);
        const Environment b = sample_environment(table, 1.0 / 50, s);
        if (a.shift != b.shift || a.cells.size() != b.cells.size())
            return {"seed_determinism", false, "mismatch at k=" + std::to_string(k)};
        for (std::size_t i = 0; i < a.cells.size(); ++i)
            if (a.cells[i].weight != b.cells[i].weight ||
                a.cells[i].elastic.a != b.cells[i].elastic.a ||
                a.cells[i].dissipation.mu != b.cells[i].dissipation.mu ||
                a.cells[i].dissipation.nu != b.cells[i].dissipation.nu)
                return {"seed_determinism", false, "cell mismatch at k=" + std::to_string(k)};
    }
    return {"seed_determinism", true, ""};
}

std::vector<Result> run_all(const ParameterTable& table, std::uint64_t seed, int n_large,
                            int n_medium, int n_small) {
    return {
        fenchel_young(table, seed, n_large),
        duality_inversion(table, seed, n_medium),
        moreau_sandwich(table, seed, n_medium),
        moreau_gradient_bound(table, seed, n_medium),
        conjugate_ordering(table, seed, n_medium),
        rate_map_regularity(table, seed, n_medium),
        rate_monotonicity(table, seed, n_small),
        weight_partition(table, seed, n_small),
        seed_determinism(table, seed, std::min(n_small, 100)),
    };
}

}  // namespace visco::properties
