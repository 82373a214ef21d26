#include "evpt/performance.hpp"

#include <cmath>
#include <limits>

#include "evpt/errors.hpp"

namespace evpt {

namespace {

constexpr double kAccelStep = 0.01;    // s
constexpr double kAccelCap = 120.0;    // s, unreachable sentinel beyond this
constexpr double kSpeedTol = 0.01 / 3.6;  // 0.01 km/h in m/s

double road_load_force(const VehicleParams& p, double speed_ms) {
    return 0.5 * p.air_density_kg_m3 * p.drag_coefficient * p.frontal_area_m2 * speed_ms *
               speed_ms +
           p.rolling_resistance * p.mass_kg * p.gravity_m_s2;
}

}  // namespace

void PerformanceSpec::validate() const {
    if (!(top_speed_kmh > 0.0) || !(accel_time_s > 0.0) || !(accel_target_kmh > 0.0)) {
        throw MalformedData("performance requirements must be positive");
    }
}

double available_wheel_torque(const PowertrainConfig& config, const VehicleParams& vehicle,
                              double speed_ms) {
    double total = 0.0;
    for (const auto& g : config.groups) {
        const double shaft_speed = motor_speed(g.transmission, speed_ms, vehicle.wheel_radius_m);
        const double envelope = g.motor.torque_limit(shaft_speed);
        total += envelope * g.transmission.ratio * g.transmission.efficiency * g.count;
    }
    return total;
}

double top_speed_kmh(const PowertrainConfig& config, const VehicleParams& vehicle) {
    const auto net_torque = [&](double v) {
        return available_wheel_torque(config, vehicle, v) -
               vehicle.wheel_radius_m * road_load_force(vehicle, v);
    };
    // kinematic ceiling: the slowest-revving group's max shaft speed
    double upper = 0.0;
    for (const auto& g : config.groups) {
        const double v_cap = g.motor.referent().max_speed_rad_s * vehicle.wheel_radius_m /
                             g.transmission.ratio;
        upper = std::max(upper, v_cap);
    }
    upper += 1.0;
    if (net_torque(0.0) < 0.0) return 0.0;
    double lo = 0.0;
    double hi = upper;
    while (hi - lo > kSpeedTol) {
        const double mid = 0.5 * (lo + hi);
        if (net_torque(mid) >= 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo * 3.6;
}

double accel_time_s(const PowertrainConfig& config, const VehicleParams& vehicle,
                    double target_kmh) {
    const double v_target = target_kmh / 3.6;
    double v = 0.0;
    double t = 0.0;
    while (t < kAccelCap) {
        const double force = available_wheel_torque(config, vehicle, v) / vehicle.wheel_radius_m -
                             road_load_force(vehicle, v);
        const double accel = force / vehicle.mass_kg;
        if (!(accel > 0.0)) return std::numeric_limits<double>::infinity();
        const double v_next = v + kAccelStep * accel;
        if (v_next >= v_target) {
            return t + kAccelStep * (v_target - v) / (v_next - v);
        }
        v = v_next;
        t += kAccelStep;
    }
    return std::numeric_limits<double>::infinity();
}

}  // namespace evpt
