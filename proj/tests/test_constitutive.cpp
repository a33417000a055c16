#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "visco/constitutive.hpp"
#include "visco/environment.hpp"
#include "visco/properties.hpp"

using namespace visco;

namespace {

// Independent oracle: brute-force minimization of the Moreau objective over a
// fine grid of proximal candidates.
double psi_eta_grid(DissipationParams p, double eta, double xi) {
    double best = std::numeric_limits<double>::infinity();
    for (double q = -10.0; q <= 10.0; q += 1e-4) {
        const double d = xi - q;
        best = std::min(best, psi(p, q) + d * d / (2.0 * eta));
    }
    return best;
}

// Independent oracle: conjugate by brute-force supremum over a strain grid.
double conjugate_grid(DissipationParams p, double eta, double sigma) {
    double best = -std::numeric_limits<double>::infinity();
    for (double xi = -40.0; xi <= 40.0; xi += 1e-3)
        best = std::max(best, sigma * xi - psi_eta(p, eta, xi));
    return best;
}

}  // namespace

TEST_CASE("psi closed form") {
    CHECK(psi({0.4, 0.1}, 0.0) == 0.0);
    CHECK(psi({0.4, 0.1}, 2.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(psi({0.0, 0.05}, -1.0) == doctest::Approx(0.025).epsilon(1e-14));
}

TEST_CASE("psi_star closed form") {
    CHECK(psi_star({0.4, 0.1}, 0.3) == 0.0);  // dead zone
    CHECK(psi_star({0.4, 0.1}, 0.9) == doctest::Approx(1.25).epsilon(1e-14));
    CHECK(psi_star({0.0, 0.05}, 0.1) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(psi_star({0.4, 0.1}, 0.0) == 0.0);
}

TEST_CASE("d_psi_star closed form") {
    CHECK(d_psi_star({0.7, 0.1}, 0.7) == 0.0);  // dead-zone boundary
    CHECK(d_psi_star({0.4, 0.05}, -0.9) == doctest::Approx(-10.0).epsilon(1e-14));
    CHECK(d_psi_star({0.0, 0.1}, 0.2) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("subdifferential") {
    const Subdifferential at_zero = subdiff_psi({0.4, 0.1}, 0.0);
    CHECK(at_zero.lo == -0.4);
    CHECK(at_zero.hi == 0.4);
    const Subdifferential smooth = subdiff_psi({0.4, 0.1}, 1.0);
    CHECK(smooth.is_singleton());
    CHECK(smooth.lo == doctest::Approx(0.5).epsilon(1e-14));
    const Subdifferential no_friction = subdiff_psi({0.0, 0.05}, 0.0);
    CHECK(no_friction.lo == 0.0);
    CHECK(no_friction.hi == 0.0);
}

TEST_CASE("Moreau envelope against grid minimization") {
    CHECK(psi_eta({0.4, 0.1}, 0.5, 0.0) == 0.0);
    CHECK(psi_eta({0.3, 0.07}, 2.0, 0.0) == 0.0);

    const DissipationParams p{0.4, 0.1};
    const double v = psi_eta(p, 0.01, 1.0);
    CHECK(v <= 0.45);  // below psi(1) = 0.45
    CHECK(v == doctest::Approx(psi_eta_grid(p, 0.01, 1.0)).epsilon(1e-6));

    // pure quadratic: nu/(2(1+nu eta)) xi^2
    CHECK(psi_eta({0.0, 0.1}, 1.0, 1.0) == doctest::Approx(0.1 / 2.2).epsilon(1e-14));

    for (double eta : {1.0, 0.1, 0.03}) {
        for (double xi : {-2.5, -0.7, -0.001, 0.2, 1.9}) {
            CAPTURE(eta);
            CAPTURE(xi);
            CHECK(psi_eta(p, eta, xi) == doctest::Approx(psi_eta_grid(p, eta, xi)).epsilon(1e-6));
        }
    }
    CHECK_THROWS_AS(psi_eta(p, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(psi_eta(p, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("Moreau conjugate identity against grid conjugation") {
    const DissipationParams p{0.4, 0.1};
    CHECK(psi_eta_star(p, 0.5, 0.0) == 0.0);
    CHECK(psi_eta_star(p, 0.01, 0.3) == doctest::Approx(4.5e-4).epsilon(1e-12));
    CHECK(psi_eta_star({0.0, 0.1}, 0.0, 1.0) == doctest::Approx(5.0).epsilon(1e-14));
    for (double eta : {0.5, 0.1}) {
        for (double sigma : {-1.5, -0.3, 0.0, 0.45, 2.0}) {
            CAPTURE(eta);
            CAPTURE(sigma);
            CHECK(psi_eta_star(p, eta, sigma) ==
                  doctest::Approx(conjugate_grid(p, eta, sigma)).epsilon(1e-5));
        }
    }
    CHECK_THROWS_AS(psi_eta_star(p, -0.1, 1.0), std::invalid_argument);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((DissipationParams{0.1, 0.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((DissipationParams{-0.1, 0.1}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((ElasticParams{0.0}.validate()), std::invalid_argument);
}

TEST_CASE("property suites on the reference table") {
    const ParameterTable table = ParameterTable::reference();
    for (const auto& r : properties::run_all(table, 20260823, 20000, 4000, 200)) {
        CAPTURE(r.name);
        CAPTURE(r.detail);
        CHECK(r.ok);
    }
}

TEST_CASE("mutation sanity: broken psi_star is caught") {
    const ParameterTable table = ParameterTable::reference();
    const auto broken = [](DissipationParams p, double s) { return psi_star(p, s) + 0.1; };
    // Off-by-constant keeps the inequality but destroys the equality case.
    const auto r = properties::fenchel_young(table, 7, 20000, broken);
    CHECK_FALSE(r.ok);
    CHECK(!r.detail.empty());
}
