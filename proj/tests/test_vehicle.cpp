#include <doctest.h>

#include <cmath>
#include <random>

#include "evpt/errors.hpp"
#include "evpt/vehicle.hpp"

using namespace evpt;

namespace {

VehicleParams reference_vehicle() { return VehicleParams{}; }

}  // namespace

TEST_CASE("wheel torque matches the road-load expansion") {
    const VehicleParams p = reference_vehicle();

    SUBCASE("steady 100 km/h") {
        const double v = 27.78;
        // oracle: evaluate the force terms explicitly
        const double aero = 0.5 * 1.2041 * 0.263 * 2.36 * v * v;
        const double rolling = 0.012 * 1700.0 * 9.81;
        const double expected = 0.26 * (aero + rolling);
        CHECK(wheel_torque(p, v, 0.0) == doctest::Approx(expected).epsilon(1e-15));
        CHECK(wheel_torque(p, v, 0.0) == doctest::Approx(127.0).epsilon(2e-3));
    }
    SUBCASE("standstill keeps the rolling term") {
        CHECK(wheel_torque(p, 0.0, 0.0) ==
              doctest::Approx(0.26 * 0.012 * 1700.0 * 9.81).epsilon(1e-15));
        CHECK(wheel_torque(p, 0.0, 0.0) == doctest::Approx(52.0).epsilon(1e-3));
    }
    SUBCASE("zero rolling resistance vanishes at standstill") {
        VehicleParams frictionless = p;
        frictionless.rolling_resistance = 1e-300;  // validate() wants > 0
        CHECK(wheel_torque(frictionless, 0.0, 0.0) == doctest::Approx(0.0));
    }
    SUBCASE("sign follows deceleration") {
        CHECK(wheel_torque(p, 10.0, -3.0) < 0.0);
    }
}

TEST_CASE("axle torque split") {
    Topology awd{DriveLayout::AWD, 1, 1.0, MotorTech::RFM, false};
    Topology rwd{DriveLayout::RWD, 1, 0.3, MotorTech::RFM, false};

    SUBCASE("symmetric AWD traction") {
        const AxleTorques t = split_axle_torque(awd, 100.0, 0.5);
        CHECK(t.front == doctest::Approx(50.0));
        CHECK(t.rear == doctest::Approx(50.0));
        CHECK(t.friction_brake == 0.0);
    }
    SUBCASE("RWD routes everything to the rear") {
        const AxleTorques t = split_axle_torque(rwd, 100.0);
        CHECK(t.front == 0.0);
        CHECK(t.rear == doctest::Approx(100.0));
    }
    SUBCASE("braking recovers the regen fraction only") {
        const AxleTorques t = split_axle_torque(rwd, -100.0);
        CHECK(t.rear == doctest::Approx(-30.0));
        CHECK(t.front == 0.0);
        CHECK(t.friction_brake == doctest::Approx(-70.0));
    }
    SUBCASE("split outside [0,1] is rejected") {
        CHECK_THROWS_AS((void)split_axle_torque(awd, 100.0, 1.5), InvalidControl);
        CHECK_THROWS_AS((void)split_axle_torque(awd, 100.0, -0.1), InvalidControl);
    }
    SUBCASE("regen fraction multiplies traction only when asked") {
        const AxleTorques with = split_axle_torque(rwd, 100.0, 0.5, /*rb_in_traction=*/true);
        CHECK(with.rear == doctest::Approx(30.0));
        const AxleTorques without = split_axle_torque(rwd, 100.0, 0.5);
        CHECK(without.rear == doctest::Approx(100.0));
    }
}

TEST_CASE("split conserves torque") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 500; ++trial) {
        Topology topo;
        topo.layout = DriveLayout(int(rng() % 3));
        topo.regen_fraction = double(rng() % 1001) / 1000.0;
        const double torque = double(int(rng() % 4000) - 2000);
        const double split = double(rng() % 1001) / 1000.0;
        const AxleTorques t = split_axle_torque(topo, torque, split);
        CHECK(t.front + t.rear + t.friction_brake == doctest::Approx(torque).epsilon(1e-12));
        if (torque >= 0.0) CHECK(t.friction_brake == 0.0);
    }
}

TEST_CASE("motor torque through the transmission") {
    SUBCASE("traction divides by ratio and efficiency") {
        const Transmission t{10.0, 0.95};
        CHECK(motor_torque(t, 100.0, false, 1) ==
              doctest::Approx(100.0 / (10.0 * 0.95)).epsilon(1e-15));
        CHECK(motor_torque(t, 100.0, false, 1) == doctest::Approx(10.526).epsilon(1e-4));
    }
    SUBCASE("identity transmission is the identity") {
        const Transmission t{1.0, 1.0};
        CHECK(motor_torque(t, -100.0, true, 1) == -100.0);
        CHECK(motor_torque(t, 100.0, false, 1) == 100.0);
    }
    SUBCASE("braking multiplies by efficiency") {
        const Transmission t{10.0, 0.95};
        CHECK(motor_torque(t, -100.0, true, 1) == doctest::Approx(-9.5).epsilon(1e-15));
    }
    SUBCASE("motor count shares the axle torque") {
        const Transmission t{1.0, 1.0};
        CHECK(motor_torque(t, 100.0, false, 4) == doctest::Approx(25.0));
    }
}

TEST_CASE("motor speed from vehicle speed") {
    CHECK(motor_speed(Transmission{10.0, 0.95}, 13.0, 0.26) == doctest::Approx(500.0));
    CHECK(motor_speed(Transmission{10.0, 0.95}, 0.0, 0.26) == 0.0);
    CHECK(motor_speed(Transmission{1.0, 1.0}, 26.0, 0.26) == doctest::Approx(100.0));
}

TEST_CASE("transmission losses never help") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 500; ++trial) {
        const Transmission t{1.0 + double(rng() % 150) / 10.0,
                             0.5 + double(rng() % 51) / 100.0};
        const double r_w = 0.2 + double(rng() % 20) / 100.0;
        const double v = double(rng() % 40);
        const double axle = double(int(rng() % 2000) - 1000);
        if (axle == 0.0 || v == 0.0) continue;
        const double wheel_power = axle * v / r_w;
        const double motor_power =
            motor_torque(t, axle, axle < 0.0, 1) * motor_speed(t, v, r_w);
        if (axle > 0.0) {
            CHECK(motor_power >= wheel_power - 1e-9);
        } else {
            CHECK(motor_power >= wheel_power - 1e-9);  // less negative: partial recovery
        }
    }
}

TEST_CASE("parameter validation") {
    VehicleParams p;
    p.mass_kg = -1.0;
    CHECK_THROWS_AS(p.validate(), MalformedData);
    Transmission t{1.0, 1.5};
    CHECK_THROWS_AS(t.validate(), MalformedData);
    Topology afm_geared{DriveLayout::AWD, 2, 1.0, MotorTech::AFM, false};
    CHECK_THROWS_AS(afm_geared.validate(), MalformedData);
}
