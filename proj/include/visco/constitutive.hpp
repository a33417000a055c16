#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

// Closed-form constitutive laws for a 1D viscoelastic material point with
// dry friction: elastic density W(xi) = a/2 xi^2 and dissipation potential
// psi(xi) = nu/2 xi^2 + mu |xi|, together with the convex-duality toolbox
// built on them (conjugate, subdifferential, Moreau envelope).

namespace visco {

struct DissipationParams {
    double mu = 0.0;  // dry-friction threshold, >= 0
    double nu = 0.0;  // viscosity, > 0

    void validate() const {
        if (!(nu > 0.0)) throw std::invalid_argument("DissipationParams: nu must be > 0");
        if (!(mu >= 0.0)) throw std::invalid_argument("DissipationParams: mu must be >= 0");
    }
};

struct ElasticParams {
    double a = 0.0;  // elastic modulus, > 0

    void validate() const {
        if (!(a > 0.0)) throw std::invalid_argument("ElasticParams: a must be > 0");
    }
};

// Closed interval [lo, hi]; degenerate exactly where psi is differentiable.
struct Subdifferential {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double s) const { return lo <= s && s <= hi; }
    bool is_singleton() const { return lo == hi; }
};

inline double elastic_energy(ElasticParams e, double xi) { return 0.5 * e.a * xi * xi; }
inline double elastic_stress(ElasticParams e, double xi) { return e.a * xi; }

// psi(xi) = nu/2 xi^2 + mu |xi|
inline double psi(DissipationParams p, double xi) {
    return 0.5 * p.nu * xi * xi + p.mu * std::abs(xi);
}

// psi*(sigma) = 0 on the dead zone |sigma| <= mu, (|sigma|-mu)^2/(2 nu) outside.
inline double psi_star(DissipationParams p, double sigma) {
    const double excess = std::abs(sigma) - p.mu;
    return excess > 0.0 ? excess * excess / (2.0 * p.nu) : 0.0;
}

// d/dsigma psi*: the rate map of the model. Continuous, monotone, 1/nu-Lipschitz.
inline double d_psi_star(DissipationParams p, double sigma) {
    const double excess = std::abs(sigma) - p.mu;
    return excess > 0.0 ? std::copysign(excess, sigma) / p.nu : 0.0;
}

inline Subdifferential subdiff_psi(DissipationParams p, double xi) {
    if (xi == 0.0) return {-p.mu, p.mu};
    const double s = p.nu * xi + std::copysign(p.mu, xi);
    return {s, s};
}

// Proximal point of psi at xi with parameter eta: the minimizer p* of
//   psi(p) + (xi - p)^2 / (2 eta).
// Case analysis on the optimality condition nu p + mu sgn(p) + (p - xi)/eta ∋ 0:
// p* = 0 when |xi| <= eta mu (the friction term absorbs the pull), otherwise
// p* = sgn(xi) (|xi| - eta mu) / (1 + eta nu).
inline double prox_psi(DissipationParams p, double eta, double xi) {
    if (!(eta > 0.0)) throw std::invalid_argument("prox_psi: eta must be > 0");
    const double slack = std::abs(xi) - eta * p.mu;
    return slack > 0.0 ? std::copysign(slack, xi) / (1.0 + eta * p.nu) : 0.0;
}

// Moreau envelope psi_eta(xi) = inf_p { psi(p) + (xi-p)^2/(2 eta) },
// evaluated at the proximal point above.
inline double psi_eta(DissipationParams p, double eta, double xi) {
    const double q = prox_psi(p, eta, xi);
    const double d = xi - q;
    return psi(p, q) + d * d / (2.0 * eta);
}

// Gradient of the Moreau envelope: (xi - prox)/eta. C^1 and 1/eta-Lipschitz.
inline double d_psi_eta(DissipationParams p, double eta, double xi) {
    return (xi - prox_psi(p, eta, xi)) / eta;
}

// Conjugate of the Moreau envelope. psi_eta is the infimal convolution of psi
// with the quadratic |.|^2/(2 eta), so its conjugate is the sum of conjugates:
//   (psi_eta)*(sigma) = psi*(sigma) + eta/2 sigma^2.
// eta = 0 is accepted and gives psi* back.
inline double psi_eta_star(DissipationParams p, double eta, double sigma) {
    if (!(eta >= 0.0)) throw std::invalid_argument("psi_eta_star: eta must be >= 0");
    return psi_star(p, sigma) + 0.5 * eta * sigma * sigma;
}

}  // namespace visco
