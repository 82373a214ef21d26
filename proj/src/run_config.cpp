#include "evpt/run_config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "evpt/errors.hpp"

namespace evpt {

namespace {

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    std::ostringstream out;
    out << std::hex << hash;
    return out.str();
}

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::filesystem::path& p) {
    return p.is_absolute() ? p : base / p;
}

void require_file(const std::filesystem::path& p, const std::string& what) {
    if (!std::filesystem::exists(p)) {
        throw ConfigError(what + " does not exist: " + p.string());
    }
}

}  // namespace

RunConfig RunConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config file not readable: " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string raw = buffer.str();

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(raw, nullptr, true, true);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config file " + path.string() + ": " + e.what());
    }

    const auto base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    RunConfig config;
    config.config_hash = fnv1a_hex(raw);
    try {
        if (!doc.contains("schema_version") || doc.at("schema_version").get<int>() != 1) {
            throw ConfigError("config file " + path.string() +
                              ": missing or unsupported schema_version");
        }

        const auto& cycle = doc.at("cycle");
        config.cycle_path = resolve(base, cycle.at("path").get<std::string>());
        const auto unit = cycle.value("speed_unit", std::string("kmh"));
        if (unit == "kmh") {
            config.cycle_unit = SpeedUnit::KilometersPerHour;
        } else if (unit == "ms") {
            config.cycle_unit = SpeedUnit::MetersPerSecond;
        } else {
            throw ConfigError("cycle.speed_unit must be 'kmh' or 'ms'");
        }

        if (doc.contains("vehicle")) {
            const auto& v = doc.at("vehicle");
            config.vehicle.wheel_radius_m = v.value("wheel_radius_m", config.vehicle.wheel_radius_m);
            config.vehicle.mass_kg = v.value("mass_kg", config.vehicle.mass_kg);
            config.vehicle.air_density_kg_m3 =
                v.value("air_density_kg_m3", config.vehicle.air_density_kg_m3);
            config.vehicle.drag_coefficient =
                v.value("drag_coefficient", config.vehicle.drag_coefficient);
            config.vehicle.frontal_area_m2 =
                v.value("frontal_area_m2", config.vehicle.frontal_area_m2);
            config.vehicle.rolling_resistance =
                v.value("rolling_resistance", config.vehicle.rolling_resistance);
            config.vehicle.gravity_m_s2 = v.value("gravity_m_s2", config.vehicle.gravity_m_s2);
        }
        config.vehicle.validate();

        if (doc.contains("performance")) {
            const auto& p = doc.at("performance");
            config.performance.top_speed_kmh =
                p.value("top_speed_kmh", config.performance.top_speed_kmh);
            config.performance.accel_time_s =
                p.value("accel_time_s", config.performance.accel_time_s);
            config.performance.accel_target_kmh =
                p.value("accel_target_kmh", config.performance.accel_target_kmh);
        }
        config.performance.validate();

        for (const auto& [tech, motor_path] : doc.at("referent_motors").items()) {
            MotorTech key;
            if (tech == "AFM") {
                key = MotorTech::AFM;
            } else if (tech == "RFM") {
                key = MotorTech::RFM;
            } else {
                throw ConfigError("referent_motors keys must be AFM or RFM, got '" + tech + "'");
            }
            config.referent_paths[key] = resolve(base, motor_path.get<std::string>());
        }

        if (doc.contains("thermal_network")) {
            config.thermal_path = resolve(base, doc.at("thermal_network").get<std::string>());
        }

        if (!doc.contains("topologies") || !doc.at("topologies").is_array() ||
            doc.at("topologies").empty()) {
            throw ConfigError("config must list at least one topology");
        }
        for (const auto& t : doc.at("topologies")) {
            TopologyRequest request;
            if (t.is_string()) {
                request.kind = topology_kind_from_string(t.get<std::string>());
            } else {
                request.kind = topology_kind_from_string(t.at("kind").get<std::string>());
                if (t.contains("regen_fraction")) {
                    request.regen_fraction = t.at("regen_fraction").get<double>();
                }
                if (t.contains("motors_per_axle")) {
                    request.motors_per_axle = t.at("motors_per_axle").get<int>();
                }
            }
            config.topologies.push_back(request);
        }

        if (doc.contains("transmission")) {
            config.topology_options.gear_efficiency =
                doc.at("transmission").value("efficiency", config.topology_options.gear_efficiency);
        }
        if (!(config.topology_options.gear_efficiency > 0.0 &&
              config.topology_options.gear_efficiency <= 1.0)) {
            throw ConfigError("transmission.efficiency must lie in (0, 1]");
        }

        if (doc.contains("optimizer")) {
            const auto& o = doc.at("optimizer");
            auto& opt = config.optimizer;
            opt.nelder_mead.max_evaluations =
                o.value("max_evaluations", opt.nelder_mead.max_evaluations);
            opt.nelder_mead.simplex_tolerance =
                o.value("simplex_tolerance", opt.nelder_mead.simplex_tolerance);
            opt.nelder_mead.objective_tolerance =
                o.value("objective_tolerance", opt.nelder_mead.objective_tolerance);
            opt.starts = o.value("starts", opt.starts);
            opt.penalty_scale = o.value("penalty_scale", opt.penalty_scale);
            opt.optimize_split = o.value("optimize_split", opt.optimize_split);
            opt.feasibility_tolerance =
                o.value("feasibility_tolerance", opt.feasibility_tolerance);
            opt.constraint_margin = o.value("constraint_margin", opt.constraint_margin);
            opt.thermal_node = o.value("thermal_node", opt.thermal_node);
            opt.thermal_limit_c = o.value("thermal_limit_c", opt.thermal_limit_c);
            if (o.contains("bounds")) {
                const auto& b = o.at("bounds");
                if (b.contains("scale")) {
                    opt.bounds.scale_min = b.at("scale").at(0).get<double>();
                    opt.bounds.scale_max = b.at("scale").at(1).get<double>();
                }
                if (b.contains("gear_ratio")) {
                    opt.bounds.gear_min = b.at("gear_ratio").at(0).get<double>();
                    opt.bounds.gear_max = b.at("gear_ratio").at(1).get<double>();
                }
            }
            if (opt.starts < 1 || opt.nelder_mead.max_evaluations < 1) {
                throw ConfigError("optimizer.starts and max_evaluations must be positive");
            }
            if (!(opt.bounds.scale_min > 0.0 && opt.bounds.scale_min < opt.bounds.scale_max)) {
                throw ConfigError("optimizer scale bounds must satisfy 0 < min < max");
            }
            if (!(opt.bounds.gear_min >= 1.0 && opt.bounds.gear_min <= opt.bounds.gear_max)) {
                throw ConfigError("optimizer gear bounds must satisfy 1 <= min <= max");
            }
        }

        config.rb_in_traction = doc.value("rb_in_traction", false);
        config.output_dir = resolve(base, doc.value("output_dir", std::string("out")));
        config.seed = doc.value("seed", std::uint64_t{42});
        config.optimizer.seed = config.seed;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config file " + path.string() + ": " + e.what());
    }

    require_file(config.cycle_path, "cycle file");
    if (config.referent_paths.empty()) {
        throw ConfigError("config must name at least one referent motor");
    }
    for (const auto& [tech, motor_path] : config.referent_paths) {
        require_file(motor_path, "referent motor file for " + to_string(tech));
    }
    if (!config.thermal_path.empty()) {
        require_file(config.thermal_path, "thermal network file");
    }
    for (const auto& request : config.topologies) {
        const bool needs_afm = request.kind == TopologyKind::AWD_AFM;
        const MotorTech needed = needs_afm ? MotorTech::AFM : MotorTech::RFM;
        if (config.referent_paths.find(needed) == config.referent_paths.end()) {
            throw ConfigError("topology " + to_string(request.kind) + " needs a " +
                              to_string(needed) + " referent motor");
        }
        if (request.regen_fraction &&
            !(*request.regen_fraction >= 0.0 && *request.regen_fraction <= 1.0)) {
            throw ConfigError("topology regen_fraction must lie in [0, 1]");
        }
        if (request.motors_per_axle && *request.motors_per_axle < 1) {
            throw ConfigError("topology motors_per_axle must be at least 1");
        }
    }
    return config;
}

LoadedInputs load_inputs(const RunConfig& config) {
    LoadedInputs inputs{load_cycle(config.cycle_path, config.cycle_unit), {}, {}};
    for (const auto& [tech, motor_path] : config.referent_paths) {
        inputs.referents[tech] =
            std::make_shared<const ReferentMotor>(ReferentMotor::load(motor_path));
    }
    if (!config.thermal_path.empty()) {
        inputs.thermal = ThermalNetwork::load(config.thermal_path);
    }
    return inputs;
}

}  // namespace evpt
