#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "visco/config.hpp"

using namespace visco;

TEST_CASE("defaults validate and serialization round-trips") {
    const ExperimentConfig cfg;
    CHECK_NOTHROW(cfg.validate());

    std::istringstream in(cfg.serialize());
    const ExperimentConfig back = ExperimentConfig::parse(in);
    CHECK(back.serialize() == cfg.serialize());
    CHECK(back.hash() == cfg.hash());
}

TEST_CASE("parsing: comments, aliases, whitespace") {
    std::istringstream in(
        "# experiment\n"
        "mode = ensemble\n"
        "epsilon = 0.01, 0.005   # two scales\n"
        "delta = 0.1\n"
        "  n_realizations =  12\n"
        "base_seed = 777\n");
    const ExperimentConfig cfg = ExperimentConfig::parse(in);
    CHECK(cfg.mode == "ensemble");
    REQUIRE(cfg.eps_list.size() == 2);
    CHECK(cfg.eps_list[1] == 0.005);
    CHECK(cfg.delta_list == std::vector<double>{0.1});
    CHECK(cfg.n_realizations == 12);
    CHECK(cfg.base_seed == 777);
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("parsing failures carry line numbers") {
    std::istringstream unknown("periods = 2\nbogus_key = 1\n");
    try {
        ExperimentConfig::parse(unknown);
        FAIL("expected invalid_argument");
    } catch (const std::invalid_argument& err) {
        CHECK(std::string(err.what()).find("line 2") != std::string::npos);
    }

    std::istringstream noeq("periods 2\n");
    CHECK_THROWS_AS(ExperimentConfig::parse(noeq), std::invalid_argument);

    std::istringstream badnum("periods = two\n");
    CHECK_THROWS_AS(ExperimentConfig::parse(badnum), std::invalid_argument);
}

TEST_CASE("validation rejects out-of-range settings") {
    ExperimentConfig cfg;
    cfg.steps_per_period = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    cfg = ExperimentConfig();
    cfg.eps_list = {2.0};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    cfg = ExperimentConfig();
    cfg.mode = "dance";
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    cfg = ExperimentConfig();
    cfg.mode = "ensemble";
    cfg.n_realizations = 1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    cfg = ExperimentConfig();
    cfg.stride = 3;  // does not divide 2000
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("hash is stable and ignores jobs") {
    ExperimentConfig a, b;
    b.jobs = 8;
    CHECK(a.hash() == b.hash());
    b.base_seed = 2;
    CHECK(a.hash() != b.hash());
}

TEST_CASE("presets") {
    for (const char* name : {"figure2", "figure2-full", "figure3", "figure3-full", "figure4",
                             "figure4-full"}) {
        CAPTURE(name);
        CHECK_NOTHROW(ExperimentConfig::preset(name).validate());
    }
    const ExperimentConfig f2 = ExperimentConfig::preset("figure2");
    CHECK(f2.mode == "sweep-rates");
    CHECK(f2.delta_list.size() == 5);
    CHECK(f2.delta_list.back() == doctest::Approx(1.0 / 256));
    const ExperimentConfig f4 = ExperimentConfig::preset("figure4-full");
    CHECK(f4.mode == "ensemble");
    CHECK(f4.eps_list.size() == 5);
    CHECK_THROWS_AS(ExperimentConfig::preset("figure9"), std::invalid_argument);
}
