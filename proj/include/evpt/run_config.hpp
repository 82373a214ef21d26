#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "evpt/drive_cycle.hpp"
#include "evpt/optimizer.hpp"
#include "evpt/performance.hpp"
#include "evpt/thermal.hpp"
#include "evpt/topology.hpp"
#include "evpt/vehicle.hpp"

namespace evpt {

// One topology entry of a run, with optional per-topology overrides.
struct TopologyRequest {
    TopologyKind kind = TopologyKind::RWD_RFM;
    std::optional<double> regen_fraction;
    std::optional<int> motors_per_axle;
};

// Parsed and validated run configuration. Relative paths resolve against
// the config file's directory.
struct RunConfig {
    int schema_version = 1;
    std::filesystem::path cycle_path;
    SpeedUnit cycle_unit = SpeedUnit::KilometersPerHour;
    VehicleParams vehicle;
    PerformanceSpec performance;
    std::map<MotorTech, std::filesystem::path> referent_paths;
    std::filesystem::path thermal_path;  // empty disables the thermal model
    std::vector<TopologyRequest> topologies;
    TopologyOptions topology_options;
    OptimizerOptions optimizer;
    bool rb_in_traction = false;
    std::filesystem::path output_dir = "out";
    std::uint64_t seed = 42;
    std::string config_hash;  // FNV-1a of the raw config bytes

    // Parses the JSON document, validates the schema, and checks that all
    // referenced files exist. Throws ConfigError with diagnostics.
    static RunConfig load(const std::filesystem::path& path);
};

// Fully loaded inputs of a run.
struct LoadedInputs {
    DriveCycle cycle;
    std::map<MotorTech, std::shared_ptr<const ReferentMotor>> referents;
    std::optional<ThermalNetwork> thermal;
};

[[nodiscard]] LoadedInputs load_inputs(const RunConfig& config);

}  // namespace evpt
