#include <doctest.h>

#include <cmath>
#include <limits>

#include "evpt/performance.hpp"
#include "evpt/topology.hpp"
#include "test_util.hpp"

using namespace evpt;
using evpt::test::shared_motor;
using evpt::test::synthetic_motor;

namespace {

// Single rear motor with the given envelope through a unit transmission.
PowertrainConfig direct_drive_config(std::shared_ptr<const ReferentMotor> referent,
                                     const ScalingFactors& k = {1.0, 1.0},
                                     const Transmission& trans = {1.0, 1.0}) {
    PowertrainConfig config;
    config.label = "test";
    config.topology = Topology{DriveLayout::RWD, 1, 0.7, MotorTech::RFM, false};
    config.groups.push_back(MotorGroup{Axle::Rear, 1, ScaledMotor(referent, k), trans});
    return config;
}

VehicleParams frictionless_vehicle() {
    VehicleParams v;
    v.drag_coefficient = 1e-12;
    v.rolling_resistance = 1e-12;
    return v;
}

}  // namespace

TEST_CASE("constant-force acceleration matches the closed form") {
    // flat torque envelope: enormous power cap keeps the whole run
    // torque-limited, resistances switched off
    auto referent = synthetic_motor(800.0, 8.0e8, 1.0e6, 1.0e7);
    const VehicleParams vehicle = frictionless_vehicle();
    const auto config = direct_drive_config(shared_motor(referent));

    const double force = 800.0 / vehicle.wheel_radius_m;
    const double v_target = 100.0 / 3.6;
    const double expected = vehicle.mass_kg * v_target / force;
    CHECK(accel_time_s(config, vehicle, 100.0) ==
          doctest::Approx(expected).epsilon(1e-3));
}

TEST_CASE("top speed bisection finds the analytic road-load crossing") {
    // flat envelope of A Nm up to a very high max speed: the crossing solves
    // A / r_w = 0.5 rho cd Af v^2 + cr m g
    auto referent = synthetic_motor(200.0, 2.0e8, 1.0e6, 1.0e7);
    const VehicleParams vehicle;  // reference road load
    const auto config = direct_drive_config(shared_motor(referent));

    const double aero = 0.5 * vehicle.air_density_kg_m3 * vehicle.drag_coefficient *
                        vehicle.frontal_area_m2;
    const double rolling = vehicle.rolling_resistance * vehicle.mass_kg * vehicle.gravity_m_s2;
    const double v_expected = std::sqrt((200.0 / vehicle.wheel_radius_m - rolling) / aero);
    const double found = top_speed_kmh(config, vehicle);
    CHECK(std::abs(found - v_expected * 3.6) <= 0.0105);  // bisection to 0.01 km/h
}

TEST_CASE("top speed edge cases") {
    SUBCASE("kinematic ceiling limits an oversized envelope") {
        auto referent = synthetic_motor(1.0e5, 1.0e9, 1.0e4, 500.0);
        const VehicleParams vehicle;
        const Transmission trans{2.0, 0.97};
        const auto config = direct_drive_config(shared_motor(referent), {1.0, 1.0}, trans);
        const double ceiling_kmh = 500.0 * vehicle.wheel_radius_m / 2.0 * 3.6;
        CHECK(top_speed_kmh(config, vehicle) == doctest::Approx(ceiling_kmh).epsilon(1e-3));
    }
    SUBCASE("envelope below the road load returns zero") {
        auto referent = synthetic_motor(1.0, 350.0, 350.0, 1600.0);
        referent.nominal_current_a = 10.0;
        const VehicleParams vehicle;  // needs ~52 Nm at standstill
        const auto config = direct_drive_config(shared_motor(referent));
        CHECK(top_speed_kmh(config, vehicle) == 0.0);
    }
    SUBCASE("more drag, less speed") {
        auto referent = synthetic_motor(200.0, 2.0e8, 1.0e6, 1.0e7);
        VehicleParams vehicle;
        const auto config = direct_drive_config(shared_motor(referent));
        const double base = top_speed_kmh(config, vehicle);
        vehicle.drag_coefficient *= 2.0;
        CHECK(top_speed_kmh(config, vehicle) < base);
    }
}

TEST_CASE("acceleration edge cases and monotonicity") {
    SUBCASE("unreachable target returns the infinity sentinel") {
        auto referent = synthetic_motor(10.0, 3500.0, 350.0, 1600.0);
        const VehicleParams vehicle;
        const auto config = direct_drive_config(shared_motor(referent));
        CHECK(std::isinf(accel_time_s(config, vehicle, 100.0)));
    }
    SUBCASE("larger scaling factors never slow the launch") {
        const auto referent = shared_motor(synthetic_motor(350.0, 122500.0, 350.0, 1600.0));
        const VehicleParams vehicle;
        const Transmission trans{6.0, 0.97};
        double previous = std::numeric_limits<double>::infinity();
        for (double k : {0.7, 0.9, 1.1, 1.3, 1.5}) {
            const auto config =
                direct_drive_config(referent, ScalingFactors{k, k}, trans);
            const double t = accel_time_s(config, vehicle, 100.0);
            CHECK(t <= previous + 1e-9);
            previous = t;
        }
    }
}
