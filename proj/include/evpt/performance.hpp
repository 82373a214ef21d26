#pragma once

#include "evpt/topology.hpp"
#include "evpt/vehicle.hpp"

namespace evpt {

// Performance requirements checked against every candidate design.
struct PerformanceSpec {
    double top_speed_kmh = 160.0;
    double accel_time_s = 8.0;         // 0 to accel_target_kmh
    double accel_target_kmh = 100.0;

    void validate() const;
};

// Maximum traction torque at the wheels for a vehicle speed: every motor's
// envelope torque referred through its transmission. Zero once a group
// exceeds its maximum shaft speed.
[[nodiscard]] double available_wheel_torque(const PowertrainConfig& config,
                                            const VehicleParams& vehicle, double speed_ms);

// Largest speed at which the available wheel torque still covers the
// road-load torque, found by bisection to 0.01 km/h. Returns 0 when the
// envelope is below the road load everywhere.
[[nodiscard]] double top_speed_kmh(const PowertrainConfig& config, const VehicleParams& vehicle);

// Full-throttle time from standstill to `target_kmh`: forward Euler on
// m dv/dt = F_max(v) - F_resist(v) at 10 ms steps with final-step
// interpolation. Returns +infinity when the target speed is unreachable.
[[nodiscard]] double accel_time_s(const PowertrainConfig& config, const VehicleParams& vehicle,
                                  double target_kmh = 100.0);

}  // namespace evpt
