#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "evpt/motor.hpp"
#include "evpt/vehicle.hpp"

namespace evpt {

// The compared powertrain configurations.
enum class TopologyKind { RWD_RFM, AWD_RFM, AWD_AFM };

enum class Axle { Front, Rear };

// One group of identical motors on an axle, sharing the axle torque
// equally through a common transmission.
struct MotorGroup {
    Axle axle = Axle::Rear;
    int count = 1;
    ScaledMotor motor;
    Transmission transmission;
};

// Instantiated powertrain: layout plus per-axle motor groups.
struct PowertrainConfig {
    std::string label;
    Topology topology;
    std::vector<MotorGroup> groups;
    double front_split = 0.5;  // AWD front-axle torque share of the design

    [[nodiscard]] const MotorGroup* group_on(Axle axle) const noexcept;
    [[nodiscard]] int total_motor_count() const noexcept;
};

// Free design variables of a powertrain instantiation.
struct DesignPoint {
    double axial = 1.0;        // axial scaling factor
    double radial = 1.0;       // radial scaling factor
    double gear_ratio = 1.0;   // fixed to 1 for direct-drive topologies
    double front_split = 0.5;  // AWD front-axle torque share
};

// Per-topology instantiation knobs beyond the design point.
struct TopologyOptions {
    double gear_efficiency = 0.97;  // RFM reduction gear
    double regen_fraction = -1.0;   // < 0 selects the layout default
    int motors_per_axle = -1;       // < 0 selects the kind default
};

// Builds the powertrain for a topology kind from the referent motors:
// RWD_RFM has one geared motor on the rear axle, AWD_RFM one geared motor
// per axle, AWD_AFM two direct-drive in-wheel motors per axle. Layout
// defaults for the recoverable braking fraction are 0.7 for single-axle
// drives and 1.0 for AWD. Throws ConfigError on an unknown kind.
[[nodiscard]] PowertrainConfig instantiate(
    TopologyKind kind, const DesignPoint& design,
    const std::map<MotorTech, std::shared_ptr<const ReferentMotor>>& referents,
    const TopologyOptions& options = {});

// Vehicle-level aggregation of an evaluated design.
struct TopologyReport {
    std::string label;
    double energy_kwh = 0.0;
    double accel_time_s = 0.0;
    double top_speed_kmh = 0.0;
    double motor_mass_kg = 0.0;
    double motor_cost_eur = 0.0;
    int motor_count = 0;
};

// Sums mass and cost over all motors and attaches the evaluated figures.
[[nodiscard]] TopologyReport aggregate_report(const PowertrainConfig& config, double energy_kwh,
                                              double accel_time_s, double top_speed_kmh);

[[nodiscard]] TopologyKind topology_kind_from_string(const std::string& name);
[[nodiscard]] std::string to_string(TopologyKind kind);

}  // namespace evpt
