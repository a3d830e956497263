#include "sgc/cost.hpp"
#include "sgc/errors.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace sgc;

namespace {
const EmhAccuracyParams kCorrection{1.1e-2, 0.15, 1.1e-3};
}

TEST_CASE("checkout lanes from throughput") {
    CanteenProfile profile;
    CHECK(device_count(profile) == 2); // 450 / 300
    profile.customers = 1;
    CHECK(device_count(profile) == 1);
    profile.customers = 1200;
    CHECK(device_count(profile) == 4);
}

TEST_CASE("equipment cost per meal from the price catalog") {
    CanteenProfile profile;
    const auto rfid = nsorc_per_meal(profile, SystemKind::Rfid);
    CHECK(rfid.find("rfid_writer")->currency == doctest::Approx(2.74));
    CHECK(rfid.find("rfid_plate")->currency == doctest::Approx(12.25));
    CHECK(rfid.total_currency() == doctest::Approx(24.306));
    CHECK(rfid.sorc_emh() == 0.0);

    const auto cv = nsorc_per_meal(profile, SystemKind::Cv);
    CHECK(cv.find("embedded_camera")->currency == doctest::Approx(0.1644));
    CHECK(cv.total_currency() == doctest::Approx(14.1384));

    // No dish types, no writers.
    CanteenProfile no_types = profile;
    no_types.t_types = 0;
    CHECK(nsorc_per_meal(no_types, SystemKind::Rfid).find("rfid_writer")->currency ==
          0.0);
}

TEST_CASE("equipment cost is independent of any accuracy target") {
    CanteenProfile profile;
    const double reference = nsorc_per_meal(profile, SystemKind::Rfid).total_currency();
    // Nothing in the breakdown depends on a target; re-evaluations agree bit-exactly.
    for (int i = 0; i < 5; ++i) {
        CHECK(nsorc_per_meal(profile, SystemKind::Rfid).total_currency() == reference);
    }
}

TEST_CASE("price catalog round-trips through a file") {
    const std::string path = "test_catalog_roundtrip.csv";
    save_price_catalog(default_price_catalog(), path);
    const auto loaded = load_price_catalog(path);
    CHECK(loaded.size() == default_price_catalog().size());
    CanteenProfile profile;
    CHECK(nsorc_per_meal(profile, SystemKind::Rfid, loaded).total_currency() ==
          doctest::Approx(24.306));
    std::remove(path.c_str());

    std::ofstream bad("test_catalog_bad.csv");
    bad << "label,system,unit_value,count_rule\nwidget,RFID,abc,fixed\n";
    bad.close();
    CHECK_THROWS_AS(load_price_catalog("test_catalog_bad.csv"), ConfigError);
    std::remove("test_catalog_bad.csv");
}

TEST_CASE("effort converts to currency exactly") {
    CHECK(emh_to_currency(0.0, 20.0) == 0.0);
    CHECK(emh_to_currency(2.419, 20.0) == doctest::Approx(48.38));
    CHECK(emh_to_currency(1.0, 1.0) == 1.0);
    CHECK_THROWS_AS(emh_to_currency(-1.0, 20.0), UsageError);
}

TEST_CASE("billing correction charges the fixed fix per error") {
    CHECK(billing_correction_cost(1.0, 1400, kCorrection) == 0.0);
    CHECK(billing_correction_cost(0.84, 1400, kCorrection) ==
          doctest::Approx(0.2464));
    CHECK(billing_correction_cost(0.0, 1400, kCorrection) == doctest::Approx(1.54));
    CHECK_THROWS_AS(billing_correction_cost(1.5, 1400, kCorrection), UsageError);
}

TEST_CASE("data correction cost") {
    CHECK(data_correction(0.84, 0.84, 1400, kCorrection) == 0.0);
    // rho = 0.5; per-error effort 1.1e-3 + 1.1e-2 * 0.5^(1/0.15), frozen from
    // an arbitrary-precision evaluation.
    CHECK(data_correction(0.84, 0.92, 1400, kCorrection) ==
          doctest::Approx(0.27065348021).epsilon(1e-9));
    CHECK(data_correction(0.84, 1.0, 1400, kCorrection) == doctest::Approx(2.7104));
    CHECK_THROWS_AS(data_correction(0.9, 0.8, 1400, kCorrection), UsageError);
}

TEST_CASE("data correction is convex and increasing in the target") {
    const double a_base = 0.84;
    double previous = 0.0;
    double previous_slope = 0.0;
    const int grid = 32;
    for (int k = 1; k <= grid; ++k) {
        const double target = a_base + (1.0 - a_base) * k / grid;
        const double cost = data_correction(a_base, target, 1400, kCorrection);
        CHECK(cost > previous);
        if (k > 1) {
            const double slope = cost - previous;
            CHECK(slope >= previous_slope - 1e-12);
            previous_slope = slope;
        }
        previous = cost;
    }
}

TEST_CASE("billing plus a no-op data correction equals billing alone") {
    const double billing = billing_correction_cost(0.84, 1400, kCorrection);
    CHECK(billing + data_correction(0.84, 0.84, 1400, kCorrection) ==
          doctest::Approx(billing));
}

TEST_CASE("correction scales linearly with the dish count") {
    for (double k : {2.0, 3.5, 10.0}) {
        CHECK(data_correction(0.84, 0.92, 1400 * k, kCorrection) ==
              doctest::Approx(k * data_correction(0.84, 0.92, 1400, kCorrection)));
        CHECK(billing_correction_cost(0.84, 1400 * k, kCorrection) ==
              doctest::Approx(k * billing_correction_cost(0.84, 1400, kCorrection)));
    }
}

TEST_CASE("profile validation names the failing field") {
    CanteenProfile profile;
    profile.r_rotation = 25.0;
    CHECK_THROWS_WITH_AS(profile.validate(), "r_rotation must be <= t_types",
                         ConfigError);
    profile = {};
    profile.t_types = 0.0;
    CHECK_THROWS_AS(profile.validate(), ConfigError);
}
