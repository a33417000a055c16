#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "visco/constitutive.hpp"
#include "visco/rng.hpp"

// Realizations of the random checkerboard medium: the unit interval is covered
// by the eps-scaled cells [eps(p+i), eps(p+i+1)) of a shifted lattice, each
// cell carrying an i.i.d. draw of (A, mu, nu) from a finite parameter table.

namespace visco {

struct ParameterTable {
    std::vector<double> a_values;
    std::vector<double> mu_values;
    std::vector<double> nu_values;
    // Optional per-list probabilities; empty means uniform.
    std::vector<double> a_weights;
    std::vector<double> mu_weights;
    std::vector<double> nu_weights;

    void validate() const;

    double min_nu() const;
    double max_nu() const;
    double max_mu() const;
    double min_mu() const;
    double max_a() const;

    bool is_viscous() const;  // mu identically zero

    // Quadratic growth/convexity constants for psi over this table.
    // psi - c xi^2 is convex for c <= nu/2, and psi <= C (1 + xi^2) with the
    // bound below (mu |xi| <= mu (1 + xi^2)/2).
    double strong_convexity_c() const { return 0.5 * min_nu(); }
    double growth_C() const;

    double mean_a() const;

    // The parameter table used for the reference cyclic-loading experiments:
    // A in {1,3}, mu in {0, 0.4, 0.7}, nu in {0.05, 0.1}, all uniform.
    static ParameterTable reference();
    // Same with mu forced to zero (pure viscous medium).
    static ParameterTable reference_viscous();
    // mu restricted to {0.4, 0.7} (friction in every cell).
    static ParameterTable reference_sticky();
};

struct Seed {
    std::uint64_t value = 0;
    std::uint64_t realization_index = 0;

    rng::Key key() const { return {value, realization_index}; }
};

struct Cell {
    double weight = 0.0;  // |(eps I_i) ∩ [0,1]|
    ElasticParams elastic;
    DissipationParams dissipation;
};

struct Environment {
    double epsilon = 0.0;
    double shift = 0.0;  // p in (-1, 0]
    Seed seed;
    std::vector<Cell> cells;

    std::size_t size() const { return cells.size(); }
    double total_weight() const;

    void save(std::ostream& out) const;
    static Environment load(std::istream& in);
};

// Draw a realization: shift ~ Uniform(-1, 0], per-cell i.i.d. parameters.
// Deterministic in (table, epsilon, seed). Throws on epsilon outside (0, 1].
Environment sample_environment(const ParameterTable& table, double epsilon, Seed seed);

// Deterministic periodic medium: cells cycle through the given profile,
// lattice shifted by `shift` in (-1, 0]. Throws on an empty profile.
Environment periodic_environment(const std::vector<std::pair<ElasticParams, DissipationParams>>& profile,
                                 double epsilon, double shift);

}  // namespace visco
