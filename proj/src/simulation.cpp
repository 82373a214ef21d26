#include "evpt/simulation.hpp"

#include <algorithm>
#include <cmath>

#include "evpt/errors.hpp"
#include "evpt/performance.hpp"

namespace evpt {

CycleEvaluation evaluate_cycle(const PowertrainConfig& config, const DriveCycle& cycle,
                               const VehicleParams& vehicle, const SimulationOptions& options) {
    const std::size_t samples = cycle.size();
    const double dt = cycle.step_s();

    CycleEvaluation out;
    out.groups.reserve(config.groups.size());
    for (const auto& g : config.groups) {
        GroupTrace trace;
        trace.axle = g.axle;
        trace.speed_rad_s.reserve(samples);
        trace.losses.copper_w.reserve(samples);
        trace.losses.iron_w.reserve(samples);
        trace.losses.bearing_w.reserve(samples);
        trace.losses.windage_w.reserve(samples);
        if (options.record_traces) {
            trace.torque_nm.reserve(samples);
            trace.electrical_w.reserve(samples);
        }
        out.groups.push_back(std::move(trace));
    }
    if (options.record_traces) {
        out.wheel_torque_nm.reserve(samples);
        out.friction_brake_nm.reserve(samples);
    }

    const double front_split =
        config.topology.layout == DriveLayout::AWD ? config.front_split : 0.5;

    double energy_j = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double v = cycle.speed_ms()[i];
        const double a = cycle.accel_ms2()[i];
        const double torque_req = wheel_torque(vehicle, v, a);
        const AxleTorques axles =
            split_axle_torque(config.topology, torque_req, front_split, options.rb_in_traction);
        if (options.record_traces) {
            out.wheel_torque_nm.push_back(torque_req);
            out.friction_brake_nm.push_back(axles.friction_brake);
        }

        for (std::size_t gi = 0; gi < config.groups.size(); ++gi) {
            const MotorGroup& g = config.groups[gi];
            GroupTrace& trace = out.groups[gi];
            const double axle_torque = g.axle == Axle::Front ? axles.front : axles.rear;
            const bool braking = torque_req < 0.0;
            double shaft_torque = motor_torque(g.transmission, axle_torque, braking, g.count);
            const double shaft_speed =
                motor_speed(g.transmission, v, vehicle.wheel_radius_m);

            const double limit = g.motor.torque_limit(shaft_speed);
            const double magnitude = std::abs(shaft_torque);
            if (magnitude > limit) {
                const double nominal = g.motor.scaled_parameters().torque_nm;
                out.envelope_violation =
                    std::max(out.envelope_violation, (magnitude - limit) / nominal);
                if (options.clamp_to_envelope) {
                    shaft_torque = std::copysign(limit, shaft_torque);
                } else {
                    throw InfeasibleOperatingPoint("cycle demands torque beyond the envelope");
                }
            }

            const double current = g.motor.operating_current(shaft_torque);
            const double copper = g.motor.copper_losses(current);
            const double iron = g.motor.iron_losses(shaft_speed);
            const double bearing = g.motor.bearing_losses(shaft_speed);
            const double windage = g.motor.windage_losses(shaft_speed);
            const double electrical =
                shaft_torque * shaft_speed + copper + iron + bearing + windage;

            trace.speed_rad_s.push_back(shaft_speed);
            trace.losses.copper_w.push_back(copper);
            trace.losses.iron_w.push_back(iron);
            trace.losses.bearing_w.push_back(bearing);
            trace.losses.windage_w.push_back(windage);
            if (options.record_traces) {
                trace.torque_nm.push_back(shaft_torque);
                trace.electrical_w.push_back(electrical);
            }
            energy_j += g.count * electrical * dt;
        }
    }
    out.energy_kwh = energy_j / 3.6e6;
    return out;
}

ThermalOutcome simulate_thermal(const PowertrainConfig& config, const CycleEvaluation& eval,
                                const ThermalNetwork& network, const std::string& constrained_node,
                                double step_s, bool record_traces) {
    ThermalOutcome outcome;
    outcome.per_group.reserve(eval.groups.size());
    for (std::size_t gi = 0; gi < eval.groups.size(); ++gi) {
        const GroupTrace& trace = eval.groups[gi];
        auto result = simulate_cycle(network, config.groups[gi].motor.factors(), trace.losses,
                                     trace.speed_rad_s, step_s, record_traces);
        outcome.peak_c = std::max(outcome.peak_c, result.peak_of(constrained_node));
        outcome.per_group.push_back(std::move(result));
    }
    return outcome;
}

}  // namespace evpt
