#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "visco/environment.hpp"

// Randomized invariant checks over the constitutive laws, the random medium
// and the solver. Shared between the test suites and the `check` subcommand;
// each check reports a counterexample on failure.

namespace visco::properties {

struct Result {
    std::string name;
    bool ok = true;
    std::string detail;  // counterexample or summary
};

using PsiStarFn = std::function<double(DissipationParams, double)>;

// Fenchel-Young inequality with the equality <-> subdifferential
// characterization. `psi_star_fn` is injectable for mutation checks.
Result fenchel_young(const ParameterTable& table, std::uint64_t seed, int n,
                     PsiStarFn psi_star_fn = nullptr);

// sigma in subdiff psi(xi) <=> xi = d psi*(sigma).
Result duality_inversion(const ParameterTable& table, std::uint64_t seed, int n);

// 0 <= psi_eta <= psi <= psi_eta + 8 eta C^2 (1 + xi^2), eta in {1, 0.1, 0.01}.
Result moreau_sandwich(const ParameterTable& table, std::uint64_t seed, int n);

// |D psi_eta(xi)| <= 4C (1 + |xi|), both analytically and by central
// finite differences.
Result moreau_gradient_bound(const ParameterTable& table, std::uint64_t seed, int n);

// (psi_eta)* >= psi* >= (psi_eta)*(m_eta .)/m_eta - 8 eta C^2/m_eta for
// eta <= c/(16 C^2), with m_eta = 1 - 8 eta C^2/c.
Result conjugate_ordering(const ParameterTable& table, std::uint64_t seed, int n);

// d psi* monotone nondecreasing and 1/nu-Lipschitz.
Result rate_map_regularity(const ParameterTable& table, std::uint64_t seed, int n);

// Componentwise monotonicity of the implicit cell rates in the trial stress,
// on randomized solver states.
Result rate_monotonicity(const ParameterTable& table, std::uint64_t seed, int n);

// Cell weights of sampled environments partition [0,1] to within 1e-12.
Result weight_partition(const ParameterTable& table, std::uint64_t seed, int n);

// Identical seeds give bit-identical environments.
Result seed_determinism(const ParameterTable& table, std::uint64_t seed, int n);

std::vector<Result> run_all(const ParameterTable& table, std::uint64_t seed, int n_large = 100000,
                            int n_medium = 10000, int n_small = 1000);

}  // namespace visco::properties
