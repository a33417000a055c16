#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "visco/environment.hpp"

using namespace visco;

TEST_CASE("reference table sampling: cell count and weight partition") {
    const Environment env = sample_environment(ParameterTable::reference(), 1.0 / 200, {42, 0});
    CHECK(env.size() == 201);
    CHECK(env.total_weight() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(env.shift > -1.0);
    CHECK(env.shift <= 0.0);
    // interior cells have width eps, boundary cells are no longer
    for (std::size_t i = 1; i + 1 < env.size(); ++i)
        CHECK(env.cells[i].weight == doctest::Approx(1.0 / 200).epsilon(1e-12));
    CHECK(env.cells.front().weight <= 1.0 / 200 + 1e-15);
    CHECK(env.cells.back().weight <= 1.0 / 200 + 1e-15);
}

TEST_CASE("degenerate single-entry table gives a homogeneous medium") {
    ParameterTable t;
    t.a_values = {2.0};
    t.mu_values = {0.0};
    t.nu_values = {0.1};
    const Environment env = sample_environment(t, 0.25, {7, 3});
    for (const Cell& c : env.cells) {
        CHECK(c.elastic.a == 2.0);
        CHECK(c.dissipation.mu == 0.0);
        CHECK(c.dissipation.nu == 0.1);
    }
}

TEST_CASE("determinism and independence across realization indices") {
    const ParameterTable t = ParameterTable::reference();
    const Environment a = sample_environment(t, 1.0 / 100, {5, 1});
    const Environment b = sample_environment(t, 1.0 / 100, {5, 1});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.cells[i].weight == b.cells[i].weight);
        CHECK(a.cells[i].elastic.a == b.cells[i].elastic.a);
        CHECK(a.cells[i].dissipation.mu == b.cells[i].dissipation.mu);
        CHECK(a.cells[i].dissipation.nu == b.cells[i].dissipation.nu);
    }
    const Environment c = sample_environment(t, 1.0 / 100, {5, 2});
    bool any_different = c.shift != a.shift;
    for (std::size_t i = 0; i < a.size() && !any_different; ++i)
        any_different = a.cells[i].elastic.a != c.cells[i].elastic.a;
    CHECK(any_different);
}

TEST_CASE("epsilon bounds are enforced") {
    const ParameterTable t = ParameterTable::reference();
    CHECK_THROWS_AS(sample_environment(t, 0.0, {1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(sample_environment(t, 1.5, {1, 0}), std::invalid_argument);
    CHECK_NOTHROW(sample_environment(t, 1.0, {1, 0}));
}

TEST_CASE("empirical mean of A converges to the table mean") {
    const ParameterTable t = ParameterTable::reference();
    const int n_seeds = 200;
    double mean = 0.0;
    int count = 0;
    for (int s = 0; s < n_seeds; ++s) {
        const Environment env =
            sample_environment(t, 1.0 / 50, {99, static_cast<std::uint64_t>(s)});
        for (const Cell& c : env.cells) {
            mean += c.elastic.a;
            ++count;
        }
    }
    mean /= count;
    // ~10^4 i.i.d. draws from {1,3}: standard error ~ 0.01
    CHECK(mean == doctest::Approx(t.mean_a()).epsilon(0.02));
}

TEST_CASE("periodic environment geometry") {
    const std::vector<std::pair<ElasticParams, DissipationParams>> single = {
        {{1.0}, {0.0, 0.1}}};
    const Environment env = periodic_environment(single, 1.0 / 8, 0.0);
    CHECK(env.size() == 9);
    for (const Cell& c : env.cells) CHECK(c.elastic.a == 1.0);
    CHECK(env.total_weight() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(env.cells.back().weight == 0.0);  // shift 0: cells 0..7 tile [0,1]

    const std::vector<std::pair<ElasticParams, DissipationParams>> alternating = {
        {{1.0}, {0.0, 0.1}}, {{3.0}, {0.0, 0.1}}};
    const Environment alt = periodic_environment(alternating, 1.0 / 10, -0.5);
    CHECK(alt.total_weight() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(alt.cells.front().weight == doctest::Approx(0.05).epsilon(1e-12));
    for (std::size_t i = 0; i < alt.size(); ++i)
        CHECK(alt.cells[i].elastic.a == (i % 2 == 0 ? 1.0 : 3.0));

    CHECK_THROWS_AS(periodic_environment({}, 0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(periodic_environment(single, 0.5, 0.5), std::invalid_argument);
}

TEST_CASE("text serialization round-trips") {
    const Environment env = sample_environment(ParameterTable::reference(), 1.0 / 37, {11, 4});
    std::stringstream buffer;
    env.save(buffer);
    const Environment back = Environment::load(buffer);
    CHECK(back.epsilon == env.epsilon);
    CHECK(back.shift == env.shift);
    CHECK(back.seed.value == env.seed.value);
    REQUIRE(back.size() == env.size());
    for (std::size_t i = 0; i < env.size(); ++i) {
        CHECK(back.cells[i].weight == env.cells[i].weight);
        CHECK(back.cells[i].elastic.a == env.cells[i].elastic.a);
        CHECK(back.cells[i].dissipation.mu == env.cells[i].dissipation.mu);
        CHECK(back.cells[i].dissipation.nu == env.cells[i].dissipation.nu);
    }
    std::stringstream bad("not an environment\n");
    CHECK_THROWS(Environment::load(bad));
}

TEST_CASE("table validation") {
    ParameterTable t = ParameterTable::reference();
    t.nu_values = {0.0};
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);
    t = ParameterTable::reference();
    t.a_weights = {0.5, 0.6};
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);
    t = ParameterTable::reference();
    t.a_weights = {0.25, 0.75};
    CHECK_NOTHROW(t.validate());
    CHECK(t.mean_a() == doctest::Approx(0.25 * 1.0 + 0.75 * 3.0));
}
