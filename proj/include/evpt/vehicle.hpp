#pragma once

#include <string>

namespace evpt {

// Longitudinal vehicle parameters. Defaults describe the compact-class
// reference vehicle used by the bundled configurations.
struct VehicleParams {
    double wheel_radius_m = 0.26;
    double mass_kg = 1700.0;
    double air_density_kg_m3 = 1.2041;
    double drag_coefficient = 0.263;
    double frontal_area_m2 = 2.36;
    double rolling_resistance = 0.012;
    double gravity_m_s2 = 9.81;

    void validate() const;  // all fields strictly positive
};

// One-speed transmission with fixed ratio and efficiency.
struct Transmission {
    double ratio = 1.0;       // > 0; 1 for direct drive
    double efficiency = 1.0;  // in (0, 1]

    void validate() const;
};

enum class DriveLayout { RWD, FWD, AWD };
enum class MotorTech { AFM, RFM };

// Powertrain layout: driven axles, motors per driven axle, recoverable
// braking fraction, and motor technology.
struct Topology {
    DriveLayout layout = DriveLayout::RWD;
    int motors_per_axle = 1;
    double regen_fraction = 0.7;  // share of braking torque routed through the motors
    MotorTech tech = MotorTech::RFM;
    bool direct_drive = false;

    [[nodiscard]] bool front_driven() const noexcept { return layout != DriveLayout::RWD; }
    [[nodiscard]] bool rear_driven() const noexcept { return layout != DriveLayout::FWD; }
    [[nodiscard]] int driven_axles() const noexcept { return layout == DriveLayout::AWD ? 2 : 1; }

    void validate() const;  // regen_fraction in [0,1]; AFM requires direct drive
};

// Quasi-static required wheel torque: inertial + aerodynamic + rolling
// terms scaled by the wheel radius. Sign follows the acceleration.
[[nodiscard]] double wheel_torque(const VehicleParams& p, double speed_ms, double accel_ms2);

// Per-axle torque routing for one time step.
struct AxleTorques {
    double front = 0.0;           // powertrain torque on the front axle
    double rear = 0.0;            // powertrain torque on the rear axle
    double friction_brake = 0.0;  // braking torque absorbed by friction brakes (<= 0)
};

// Distributes the required wheel torque over the driven axles. Traction
// goes entirely through the powertrain (front share `front_split` on AWD).
// Braking routes `regen_fraction * torque` through the powertrain and
// attributes the remainder to the friction brakes. With `rb_in_traction`
// the regen fraction also multiplies the traction branch (off by default).
// Throws InvalidControl when front_split is outside [0, 1].
[[nodiscard]] AxleTorques split_axle_torque(const Topology& topo, double torque_req,
                                            double front_split = 0.5,
                                            bool rb_in_traction = false);

// Maps axle torque to per-motor torque through the transmission. The
// efficiency divides in traction and multiplies in braking; any regen
// fraction must already be applied by split_axle_torque.
[[nodiscard]] double motor_torque(const Transmission& t, double axle_torque, bool braking,
                                  int motor_count);

// Motor shaft speed for a vehicle speed: ratio * v / r_wheel.
[[nodiscard]] double motor_speed(const Transmission& t, double speed_ms, double wheel_radius_m);

[[nodiscard]] std::string to_string(DriveLayout layout);
[[nodiscard]] std::string to_string(MotorTech tech);

}  // namespace evpt
