#include "evpt/vehicle.hpp"

#include <cmath>

#include "evpt/errors.hpp"

namespace evpt {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw MalformedData(std::string(name) + " must be positive and finite");
    }
}

}  // namespace

void VehicleParams::validate() const {
    require_positive(wheel_radius_m, "vehicle.wheel_radius_m");
    require_positive(mass_kg, "vehicle.mass_kg");
    require_positive(air_density_kg_m3, "vehicle.air_density_kg_m3");
    require_positive(drag_coefficient, "vehicle.drag_coefficient");
    require_positive(frontal_area_m2, "vehicle.frontal_area_m2");
    require_positive(rolling_resistance, "vehicle.rolling_resistance");
    require_positive(gravity_m_s2, "vehicle.gravity_m_s2");
}

void Transmission::validate() const {
    require_positive(ratio, "transmission.ratio");
    if (!(efficiency > 0.0 && efficiency <= 1.0)) {
        throw MalformedData("transmission.efficiency must lie in (0, 1]");
    }
}

void Topology::validate() const {
    if (motors_per_axle < 1) {
        throw MalformedData("topology.motors_per_axle must be at least 1");
    }
    if (!(regen_fraction >= 0.0 && regen_fraction <= 1.0)) {
        throw MalformedData("topology.regen_fraction must lie in [0, 1]");
    }
    if (tech == MotorTech::AFM && !direct_drive) {
        throw MalformedData("AFM topologies are in-wheel and require direct drive");
    }
}

double wheel_torque(const VehicleParams& p, double speed_ms, double accel_ms2) {
    const double inertial = p.mass_kg * accel_ms2;
    const double aero = 0.5 * p.air_density_kg_m3 * p.drag_coefficient * p.frontal_area_m2 *
                        speed_ms * speed_ms;
    const double rolling = p.rolling_resistance * p.mass_kg * p.gravity_m_s2;
    return p.wheel_radius_m * (inertial + aero + rolling);
}

AxleTorques split_axle_torque(const Topology& topo, double torque_req, double front_split,
                              bool rb_in_traction) {
    if (!(front_split >= 0.0 && front_split <= 1.0)) {
        throw InvalidControl("front split must lie in [0, 1]");
    }
    double front_share = 0.0;
    switch (topo.layout) {
        case DriveLayout::FWD: front_share = 1.0; break;
        case DriveLayout::RWD: front_share = 0.0; break;
        case DriveLayout::AWD: front_share = front_split; break;
    }

    AxleTorques out;
    if (torque_req >= 0.0) {
        const double factor = rb_in_traction ? topo.regen_fraction : 1.0;
        out.front = factor * front_share * torque_req;
        out.rear = factor * (1.0 - front_share) * torque_req;
    } else {
        const double recoverable = topo.regen_fraction * torque_req;
        out.front = front_share * recoverable;
        out.rear = (1.0 - front_share) * recoverable;
        out.friction_brake = torque_req - recoverable;
    }
    return out;
}

double motor_torque(const Transmission& t, double axle_torque, bool braking, int motor_count) {
    const double n = static_cast<double>(motor_count);
    if (braking) {
        return axle_torque * t.efficiency / (n * t.ratio);
    }
    return axle_torque / (n * t.ratio * t.efficiency);
}

double motor_speed(const Transmission& t, double speed_ms, double wheel_radius_m) {
    return t.ratio * speed_ms / wheel_radius_m;
}

std::string to_string(DriveLayout layout) {
    switch (layout) {
        case DriveLayout::RWD: return "RWD";
        case DriveLayout::FWD: return "FWD";
        case DriveLayout::AWD: return "AWD";
    }
    return "?";
}

std::string to_string(MotorTech tech) {
    return tech == MotorTech::AFM ? "AFM" : "RFM";
}

}  // namespace evpt
