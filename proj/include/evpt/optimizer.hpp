#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "evpt/drive_cycle.hpp"
#include "evpt/performance.hpp"
#include "evpt/simulation.hpp"
#include "evpt/thermal.hpp"
#include "evpt/topology.hpp"

namespace evpt {

// Nelder-Mead options; coefficients are the standard simplex set
// (reflection 1, expansion 2, contraction 0.5, shrink 0.5).
struct NelderMeadOptions {
    double simplex_tolerance = 1e-6;    // terminate below this simplex diameter
    double objective_tolerance = 1e-9;  // or below this objective spread
    int max_evaluations = 2000;
    double initial_step = 0.1;  // per-coordinate offset building the first simplex
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int evaluations = 0;
    int iterations = 0;
    bool converged = false;        // a tolerance criterion fired before the budget
    std::vector<double> history;   // best vertex value per iteration
};

using Objective = std::function<double(std::span<const double>)>;

// Derivative-free simplex minimization. Throws InvalidStart when the start
// point or its objective value is not finite.
[[nodiscard]] NelderMeadResult nelder_mead(const Objective& f, std::span<const double> x0,
                                           const NelderMeadOptions& options = {});

// Inclusive per-variable box.
struct Bounds {
    double scale_min = 0.5;   // both scaling factors
    double scale_max = 2.0;
    double gear_min = 1.0;
    double gear_max = 16.0;
};

struct OptimizerOptions {
    NelderMeadOptions nelder_mead;
    Bounds bounds;
    int starts = 5;                 // Latin-hypercube multi-start count
    std::uint64_t seed = 42;
    double penalty_scale = 2000.0;  // weight multiplier on squared relative violations
    bool optimize_split = true;     // include the AWD front split as a variable
    double feasibility_tolerance = 1e-3;  // max relative violation still deemed feasible
    double constraint_margin = 0.002;     // requirements tightened by this during the search
    std::string thermal_node = "winding";
    double thermal_limit_c = 160.0;
};

// Mission context shared by all evaluations of one optimization.
struct Mission {
    const DriveCycle* cycle = nullptr;
    const VehicleParams* vehicle = nullptr;
    const ThermalNetwork* thermal = nullptr;  // optional
    PerformanceSpec performance;
    TopologyOptions topology_options;
    bool rb_in_traction = false;
};

// Constraint margins of an evaluated design; positive means satisfied.
struct ConstraintSlacks {
    double top_speed_kmh = 0.0;   // achieved - required
    double accel_s = 0.0;         // required - achieved
    double winding_temp_c = 0.0;  // limit - peak
    double envelope = 0.0;        // negative max relative torque excess
};

struct DesignEvaluation {
    double energy_kwh = 0.0;
    ConstraintSlacks slacks;
    bool feasible = false;
    double max_violation = 0.0;  // largest relative constraint violation
};

// Full-design evaluation: cycle energy, thermal peak, performance checks,
// and constraint slacks for one candidate point.
[[nodiscard]] DesignEvaluation evaluate_design(const DesignPoint& p, TopologyKind kind,
                                               const Mission& mission,
                                               const std::map<MotorTech, std::shared_ptr<const ReferentMotor>>& referents,
                                               const OptimizerOptions& options);

struct OptimizationResult {
    DesignPoint best;
    double energy_kwh = 0.0;
    ConstraintSlacks slacks;
    int evaluations = 0;
    bool converged = false;
    bool feasible = false;
    std::vector<double> history;  // best penalized objective per iteration
};

// Minimizes drive-cycle electrical energy over the active design variables
// with quadratic penalties on constraint violations and a seeded
// Latin-hypercube multi-start. Deterministic for a fixed seed.
[[nodiscard]] OptimizationResult optimize_powertrain(
    TopologyKind kind, const Mission& mission,
    const std::map<MotorTech, std::shared_ptr<const ReferentMotor>>& referents,
    const OptimizerOptions& options);

}  // namespace evpt
