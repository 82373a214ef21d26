#include <doctest.h>

#include <cmath>
#include <random>

#include "evpt/drive_cycle.hpp"
#include "evpt/errors.hpp"
#include "test_util.hpp"

using namespace evpt;
using evpt::test::TempFile;

TEST_CASE("two-row km/h file converts and differentiates") {
    TempFile file(".csv");
    file.write("t_s,v_kmh\n0,0\n1,36\n");
    const DriveCycle cycle = load_cycle(file.path(), SpeedUnit::KilometersPerHour);
    REQUIRE(cycle.size() == 2);
    CHECK(cycle.speed_ms()[0] == 0.0);
    CHECK(cycle.speed_ms()[1] == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(cycle.accel_ms2()[0] == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(cycle.accel_ms2()[1] == 0.0);
}

TEST_CASE("bundled WLTP-class-3 cycle loads with the published sample count") {
    const DriveCycle cycle =
        load_cycle(evpt::test::data_dir() / "cycles/wltp_class3.csv",
                   SpeedUnit::KilometersPerHour);
    CHECK(cycle.size() == 1801);
    CHECK(cycle.duration_s() == doctest::Approx(1800.0));
    CHECK(cycle.step_s() == doctest::Approx(1.0));
    CHECK(cycle.max_speed_ms() * 3.6 < 135.0);
    CHECK(cycle.distance_m() > 20000.0);
}

TEST_CASE("malformed cycles are rejected") {
    SUBCASE("non-monotonic time") {
        TempFile file(".csv");
        file.write("t_s,v_kmh\n0,0\n1,10\n1,20\n");
        CHECK_THROWS_AS((void)load_cycle(file.path(), SpeedUnit::KilometersPerHour),
                        MalformedCycle);
    }
    SUBCASE("negative speed") {
        TempFile file(".csv");
        file.write("t_s,v_kmh\n0,0\n1,-1\n");
        CHECK_THROWS_AS((void)load_cycle(file.path(), SpeedUnit::KilometersPerHour),
                        MalformedCycle);
    }
    SUBCASE("fewer than two samples") {
        TempFile file(".csv");
        file.write("t_s,v_kmh\n0,0\n");
        CHECK_THROWS_AS((void)load_cycle(file.path(), SpeedUnit::KilometersPerHour),
                        MalformedCycle);
    }
    SUBCASE("non-uniform step") {
        TempFile file(".csv");
        file.write("t_s,v_kmh\n0,0\n1,10\n2.5,20\n");
        CHECK_THROWS_AS((void)load_cycle(file.path(), SpeedUnit::KilometersPerHour),
                        MalformedCycle);
    }
    SUBCASE("missing speed column for the requested unit") {
        TempFile file(".csv");
        file.write("t_s,v_kmh\n0,0\n1,10\n");
        CHECK_THROWS_AS((void)load_cycle(file.path(), SpeedUnit::MetersPerSecond),
                        MalformedCycle);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS((void)load_cycle("/nonexistent/cycle.csv", SpeedUnit::KilometersPerHour),
                        MalformedCycle);
    }
}

TEST_CASE("forward-difference acceleration examples") {
    CHECK(derive_acceleration({0.0, 0.0, 0.0}, 1.0) == std::vector<double>{0.0, 0.0, 0.0});
    CHECK(derive_acceleration({0.0, 10.0, 10.0}, 1.0) == std::vector<double>{10.0, 0.0, 0.0});
    CHECK(derive_acceleration({5.0, 3.0}, 1.0) == std::vector<double>{-2.0, 0.0});
}

TEST_CASE("acceleration integral telescopes to the speed difference") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const double dt = trial % 2 == 0 ? 1.0 : 0.5;
        const std::size_t n = 2 + rng() % 200;
        std::vector<double> t(n);
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) {
            t[i] = double(i) * dt;
            v[i] = double(rng() % 4000) / 100.0;
        }
        const DriveCycle cycle = DriveCycle::from_samples(t, v, "random");
        double integral = 0.0;
        for (double a : cycle.accel_ms2()) integral += a * dt;
        CHECK(integral == doctest::Approx(v.back() - v.front()).epsilon(1e-12));
    }
}

TEST_CASE("CSV round-trip is bit-exact for the stored unit") {
    std::mt19937_64 rng(11);
    std::vector<double> t(100);
    std::vector<double> v(100);
    for (std::size_t i = 0; i < t.size(); ++i) {
        t[i] = double(i);
        v[i] = double(rng() % 100000) / 3571.0;  // awkward decimals on purpose
    }
    const DriveCycle original = DriveCycle::from_samples(t, v, "roundtrip");
    TempFile file(".csv");
    save_cycle(original, file.path(), SpeedUnit::MetersPerSecond);
    const DriveCycle reloaded = load_cycle(file.path(), SpeedUnit::MetersPerSecond);
    REQUIRE(reloaded.size() == original.size());
    for (std::size_t i = 0; i < original.size(); ++i) {
        CHECK(reloaded.time_s()[i] == original.time_s()[i]);
        CHECK(reloaded.speed_ms()[i] == original.speed_ms()[i]);
    }
}
