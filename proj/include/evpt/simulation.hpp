#pragma once

#include <optional>
#include <vector>

#include "evpt/drive_cycle.hpp"
#include "evpt/thermal.hpp"
#include "evpt/topology.hpp"
#include "evpt/vehicle.hpp"

namespace evpt {

struct SimulationOptions {
    bool record_traces = false;      // keep per-step traces for reporting
    bool rb_in_traction = false;     // apply the regen fraction in traction too
    bool clamp_to_envelope = true;   // clamp torque to the limit, accumulate violation
};

// Per-step operating record of one motor of a group. Shaft speeds and the
// per-source loss breakdown are always populated (the thermal model needs
// them); torque and electrical power only under record_traces.
struct GroupTrace {
    Axle axle = Axle::Rear;
    std::vector<double> torque_nm;
    std::vector<double> speed_rad_s;
    std::vector<double> electrical_w;
    LossTraces losses;
};

// Outcome of simulating one powertrain over a cycle.
struct CycleEvaluation {
    double energy_kwh = 0.0;           // summed over all motors
    double envelope_violation = 0.0;   // max relative torque excess, 0 when feasible
    std::vector<GroupTrace> groups;
    std::vector<double> wheel_torque_nm;    // recorded traces only
    std::vector<double> friction_brake_nm;  // recorded traces only
};

// Backward-facing quasi-static simulation: wheel torque from the cycle,
// split across axles, referred through each transmission, and mapped to
// electrical power per motor. Torque demands beyond the envelope are
// clamped and reported via envelope_violation.
[[nodiscard]] CycleEvaluation evaluate_cycle(const PowertrainConfig& config,
                                             const DriveCycle& cycle,
                                             const VehicleParams& vehicle,
                                             const SimulationOptions& options = {});

// Thermal responses per motor group for an evaluated cycle.
struct ThermalOutcome {
    std::vector<ThermalSimResult> per_group;
    double peak_c = 0.0;  // maximum of the constrained node over all groups
};

[[nodiscard]] ThermalOutcome simulate_thermal(const PowertrainConfig& config,
                                              const CycleEvaluation& eval,
                                              const ThermalNetwork& network,
                                              const std::string& constrained_node, double step_s,
                                              bool record_traces = false);

}  // namespace evpt
