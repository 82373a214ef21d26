#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "evpt/optimizer.hpp"
#include "evpt/run_config.hpp"
#include "evpt/topology.hpp"

namespace evpt {

// One optimized topology with its vehicle-level aggregate.
struct TopologyOutcome {
    TopologyKind kind = TopologyKind::RWD_RFM;
    OptimizationResult result;
    TopologyReport report;
};

struct RunOutcome {
    std::vector<TopologyOutcome> topologies;
    bool all_converged = false;
};

// Executes every requested topology: optimize, re-evaluate the optimum with
// full traces, and write `<topology>_result.json` plus `<topology>_trace.csv`
// into the output directory. Reports embed the config hash, seed, and data
// schema versions; outputs are byte-identical for identical (config, seed).
RunOutcome run(const RunConfig& config);

// One sweep sample of a scaled-motor quantity.
struct SweepRow {
    double radial = 0.0;
    double axial = 0.0;
    double value = 0.0;
};

// Evaluates `quantity` over the grid and writes a long-format CSV
// (k_r,k_a,quantity,value). Grid axes parse either as a comma list
// ("0.7,0.85,1.15,1.3") or a range ("0.5:2.0:7"). Known quantities:
// resistance, copper_nominal, torque, power, current, inductance, flux,
// volume, mass, cost.
std::vector<SweepRow> sweep(const RunConfig& config, const std::string& quantity,
                            const std::string& grid_spec, MotorTech tech,
                            const std::filesystem::path& out_csv);

[[nodiscard]] std::vector<double> parse_grid_axis(const std::string& spec);

}  // namespace evpt
