#include "sgc/scenario.hpp"

#include "sgc/errors.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

using namespace sgc;

namespace {

struct TempScenario {
    std::string path;
    explicit TempScenario(const std::string& contents,
                          std::string name = "test_scenario.ini")
        : path(std::move(name)) {
        std::ofstream out(path);
        out << contents;
    }
    ~TempScenario() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("empty scenario reproduces the baseline defaults") {
    TempScenario file("");
    const auto config = load_scenario(file.path);
    CHECK(config.profile.t_types == 20);
    CHECK(config.profile.n_per_type == 70);
    CHECK(config.profile.f_new == 0.3);
    CHECK(config.profile.r_rotation == 6);
    CHECK(config.profile.customers == 450);
    CHECK(config.model.labeling.s_standard == 1.39e-3);
    CHECK(config.model.correction.offset == 1.1e-3);
    CHECK(config.model.sna.upper_bound == 0.85);
    CHECK(config.model.sna.variant == SnaVariant::ZeroAnchored);
    CHECK_FALSE(config.beta_given);
    CHECK(config.n_meals == 100);
    CHECK(config.catalog.size() == 12);
}

TEST_CASE("out-of-range alpha is rejected by name") {
    TempScenario file("[procedure.labeling]\nalpha = 1.5\n");
    try {
        load_scenario(file.path);
        FAIL("expected a ConfigError");
    } catch (const ConfigError& error) {
        const std::string what = error.what();
        CHECK(what.find("alpha") != std::string::npos);
        CHECK(what.find("[0, 1]") != std::string::npos);
    }
}

TEST_CASE("overrides pass through to the effective configuration") {
    TempScenario file("[sna]\nupper_bound = 0.9\nbeta = 0.25\n");
    const auto config = load_scenario(file.path);
    CHECK(config.model.sna.upper_bound == 0.9);
    CHECK(config.model.sna.beta == 0.25);
    CHECK(config.beta_given);
    const auto echo = effective_config_echo(config);
    CHECK(echo.find("upper_bound=0.9") != std::string::npos);
    CHECK(echo.find("(pinned)") != std::string::npos);
}

TEST_CASE("unknown keys and sections are named") {
    TempScenario typo("[canteen]\nt_typos = 20\n");
    try {
        load_scenario(typo.path);
        FAIL("expected a ConfigError");
    } catch (const ConfigError& error) {
        const std::string what = error.what();
        CHECK(what.find("t_typos") != std::string::npos);
        CHECK(what.find("line 2") != std::string::npos);
    }

    TempScenario section("[cantina]\nt_types = 20\n", "test_scenario2.ini");
    CHECK_THROWS_AS(load_scenario(section.path), ConfigError);

    TempScenario loose("t_types = 20\n", "test_scenario3.ini");
    CHECK_THROWS_AS(load_scenario(loose.path), ConfigError);
}

TEST_CASE("study block carries free-form arguments") {
    TempScenario file("[study]\ncommand = simulate\nmeals = 50\n");
    const auto config = load_scenario(file.path);
    CHECK(config.study.at("command") == "simulate");
    CHECK(config.study.at("meals") == "50");
}

TEST_CASE("price catalog resolution order") {
    TempScenario catalog("label,system,unit_value,count_rule\n"
                         "rfid_software,RFID,9.99,fixed\n",
                         "test_catalog_env.csv");
    TempScenario scenario("", "test_scenario4.ini");
    auto config = load_scenario(scenario.path);
    CHECK(config.catalog.size() == 12);

    setenv("SGC_PRICE_CATALOG", catalog.path.c_str(), 1);
    const auto resolved = resolve_price_catalog(config);
    unsetenv("SGC_PRICE_CATALOG");
    REQUIRE(resolved.size() == 1);
    CHECK(resolved[0].unit_value == 9.99);
}

TEST_CASE("calibration fills in the transmission coefficient") {
    TempScenario file("[simulation]\nmeals = 100\n");
    auto config = load_scenario(file.path);
    config.ensure_calibrated();
    CHECK(config.model.sna.beta > 1e-6);
    CHECK(config.model.sna.beta < 10.0);
}
