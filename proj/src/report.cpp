#include "evpt/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "evpt/errors.hpp"
#include "evpt/performance.hpp"
#include "evpt/simulation.hpp"

namespace evpt {

namespace {

void append_number(std::string& out, double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    out.append(buf, ptr);
}

std::string axle_prefix(Axle axle) {
    return axle == Axle::Front ? "front" : "rear";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write output file: " + path.string());
    }
    out << text;
}

nlohmann::json design_json(const DesignPoint& p) {
    return {{"axial", p.axial},
            {"radial", p.radial},
            {"gear_ratio", p.gear_ratio},
            {"front_split", p.front_split}};
}

void write_trace_csv(const std::filesystem::path& path, const DriveCycle& cycle,
                     const CycleEvaluation& eval, const ThermalOutcome* thermal,
                     const std::string& thermal_node) {
    std::string csv = "t_s,v_ms,a_ms2,wheel_torque_nm,friction_brake_nm";
    for (const auto& g : eval.groups) {
        const std::string p = axle_prefix(g.axle);
        csv += "," + p + "_torque_nm," + p + "_speed_rad_s," + p + "_p_cu_w," + p + "_p_fe_w," +
               p + "_p_br_w," + p + "_p_wind_w," + p + "_p_el_w";
        if (thermal != nullptr) csv += "," + p + "_t_" + thermal_node + "_c";
    }
    csv += "\n";

    std::vector<const std::vector<double>*> node_traces(eval.groups.size(), nullptr);
    if (thermal != nullptr) {
        for (std::size_t gi = 0; gi < eval.groups.size(); ++gi) {
            const auto& result = thermal->per_group[gi];
            for (std::size_t ni = 0; ni < result.node_names.size(); ++ni) {
                if (result.node_names[ni] == thermal_node) {
                    node_traces[gi] = &result.traces_c[ni];
                }
            }
        }
    }

    for (std::size_t i = 0; i < cycle.size(); ++i) {
        append_number(csv, cycle.time_s()[i]);
        csv += ',';
        append_number(csv, cycle.speed_ms()[i]);
        csv += ',';
        append_number(csv, cycle.accel_ms2()[i]);
        csv += ',';
        append_number(csv, eval.wheel_torque_nm[i]);
        csv += ',';
        append_number(csv, eval.friction_brake_nm[i]);
        for (std::size_t gi = 0; gi < eval.groups.size(); ++gi) {
            const auto& g = eval.groups[gi];
            csv += ',';
            append_number(csv, g.torque_nm[i]);
            csv += ',';
            append_number(csv, g.speed_rad_s[i]);
            csv += ',';
            append_number(csv, g.losses.copper_w[i]);
            csv += ',';
            append_number(csv, g.losses.iron_w[i]);
            csv += ',';
            append_number(csv, g.losses.bearing_w[i]);
            csv += ',';
            append_number(csv, g.losses.windage_w[i]);
            csv += ',';
            append_number(csv, g.electrical_w[i]);
            if (thermal != nullptr) {
                csv += ',';
                append_number(csv, node_traces[gi] != nullptr ? (*node_traces[gi])[i] : 0.0);
            }
        }
        csv += '\n';
    }
    write_text(path, csv);
}

}  // namespace

RunOutcome run(const RunConfig& config) {
    const LoadedInputs inputs = load_inputs(config);
    std::filesystem::create_directories(config.output_dir);

    RunOutcome outcome;
    outcome.all_converged = true;

    for (const auto& request : config.topologies) {
        Mission mission;
        mission.cycle = &inputs.cycle;
        mission.vehicle = &config.vehicle;
        mission.thermal = inputs.thermal ? &*inputs.thermal : nullptr;
        mission.performance = config.performance;
        mission.topology_options = config.topology_options;
        if (request.regen_fraction) {
            mission.topology_options.regen_fraction = *request.regen_fraction;
        }
        if (request.motors_per_axle) {
            mission.topology_options.motors_per_axle = *request.motors_per_axle;
        }
        mission.rb_in_traction = config.rb_in_traction;

        TopologyOutcome topo;
        topo.kind = request.kind;
        topo.result = optimize_powertrain(request.kind, mission, inputs.referents,
                                          config.optimizer);
        outcome.all_converged = outcome.all_converged && topo.result.converged;

        // Re-evaluate the optimum with full traces for the reports.
        const PowertrainConfig best = instantiate(request.kind, topo.result.best,
                                                  inputs.referents, mission.topology_options);
        SimulationOptions sim_options;
        sim_options.record_traces = true;
        sim_options.rb_in_traction = config.rb_in_traction;
        const CycleEvaluation eval = evaluate_cycle(best, inputs.cycle, config.vehicle,
                                                    sim_options);
        std::optional<ThermalOutcome> thermal;
        if (mission.thermal != nullptr) {
            thermal = simulate_thermal(best, eval, *mission.thermal,
                                       config.optimizer.thermal_node, inputs.cycle.step_s(),
                                       /*record_traces=*/true);
        }
        const double accel = accel_time_s(best, config.vehicle,
                                          config.performance.accel_target_kmh);
        const double top = top_speed_kmh(best, config.vehicle);
        topo.report = aggregate_report(best, eval.energy_kwh, accel, top);

        nlohmann::json report{
            {"schema_version", 1},
            {"config_hash", config.config_hash},
            {"seed", config.seed},
            {"topology", to_string(request.kind)},
            {"cycle", inputs.cycle.name()},
            {"data_schema", {{"motor", 1}, {"thermal", mission.thermal ? 1 : 0}}},
            {"design", design_json(topo.result.best)},
            {"energy_kwh", topo.result.energy_kwh},
            {"feasible", topo.result.feasible},
            {"converged", topo.result.converged},
            {"evaluations", topo.result.evaluations},
            {"slacks",
             {{"top_speed_kmh", topo.result.slacks.top_speed_kmh},
              {"accel_s", topo.result.slacks.accel_s},
              {"winding_temp_c", topo.result.slacks.winding_temp_c},
              {"envelope", topo.result.slacks.envelope}}},
            {"aggregate",
             {{"energy_kwh", topo.report.energy_kwh},
              {"accel_time_s", topo.report.accel_time_s},
              {"top_speed_kmh", topo.report.top_speed_kmh},
              {"motor_mass_kg", topo.report.motor_mass_kg},
              {"motor_cost_eur", topo.report.motor_cost_eur},
              {"motor_count", topo.report.motor_count}}},
            {"history", topo.result.history},
        };
        const auto label = to_string(request.kind);
        write_text(config.output_dir / (label + "_result.json"), report.dump(2) + "\n");
        write_trace_csv(config.output_dir / (label + "_trace.csv"), inputs.cycle, eval,
                        thermal ? &*thermal : nullptr, config.optimizer.thermal_node);

        outcome.topologies.push_back(std::move(topo));
    }
    return outcome;
}

std::vector<double> parse_grid_axis(const std::string& spec) {
    std::vector<double> values;
    if (spec.find(':') != std::string::npos) {
        double start = 0.0;
        double stop = 0.0;
        int count = 0;
        const auto first = spec.find(':');
        const auto second = spec.find(':', first + 1);
        if (second == std::string::npos) {
            throw ConfigError("grid range must be start:stop:count, got '" + spec + "'");
        }
        try {
            start = std::stod(spec.substr(0, first));
            stop = std::stod(spec.substr(first + 1, second - first - 1));
            count = std::stoi(spec.substr(second + 1));
        } catch (const std::exception&) {
            throw ConfigError("cannot parse grid range '" + spec + "'");
        }
        if (count < 1 || !(start > 0.0) || !(stop >= start)) {
            throw ConfigError("grid range needs 0 < start <= stop and count >= 1");
        }
        if (count == 1) {
            values.push_back(start);
        } else {
            for (int i = 0; i < count; ++i) {
                values.push_back(start + (stop - start) * i / (count - 1));
            }
        }
        return values;
    }
    std::size_t pos = 0;
    while (pos < spec.size()) {
        const auto comma = spec.find(',', pos);
        const auto token = spec.substr(pos, comma == std::string::npos ? spec.npos : comma - pos);
        try {
            values.push_back(std::stod(token));
        } catch (const std::exception&) {
            throw ConfigError("cannot parse grid value '" + token + "'");
        }
        if (!(values.back() > 0.0)) {
            throw ConfigError("grid values must be positive");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (values.empty()) {
        throw ConfigError("grid specification is empty");
    }
    return values;
}

std::vector<SweepRow> sweep(const RunConfig& config, const std::string& quantity,
                            const std::string& grid_spec, MotorTech tech,
                            const std::filesystem::path& out_csv) {
    const auto it = config.referent_paths.find(tech);
    if (it == config.referent_paths.end()) {
        throw ConfigError("config does not provide a " + to_string(tech) + " referent motor");
    }
    const auto referent = std::make_shared<const ReferentMotor>(ReferentMotor::load(it->second));
    const auto axis = parse_grid_axis(grid_spec);

    const auto evaluate = [&](const ScaledMotor& motor) -> double {
        const ScaledParameters params = motor.scaled_parameters();
        if (quantity == "resistance") return params.resistance_ohm;
        if (quantity == "torque") return params.torque_nm;
        if (quantity == "power") return params.power_w;
        if (quantity == "current") return params.current_a;
        if (quantity == "inductance") return params.inductance_h;
        if (quantity == "flux") return params.flux_linkage_wb;
        if (quantity == "volume") return params.volume_m3;
        if (quantity == "copper_nominal") return motor.copper_losses(params.current_a);
        if (quantity == "mass") return motor.mass_and_cost().mass_kg;
        if (quantity == "cost") return motor.mass_and_cost().cost_eur;
        throw ConfigError("unknown sweep quantity '" + quantity + "'");
    };

    std::vector<SweepRow> rows;
    std::string csv = "k_r,k_a,quantity,value\n";
    for (double radial : axis) {
        for (double axial : axis) {
            const ScaledMotor motor(referent, ScalingFactors{radial, axial});
            SweepRow row{radial, axial, evaluate(motor)};
            append_number(csv, row.radial);
            csv += ',';
            append_number(csv, row.axial);
            csv += ',';
            csv += quantity;
            csv += ',';
            append_number(csv, row.value);
            csv += '\n';
            rows.push_back(row);
        }
    }
    if (!out_csv.empty()) {
        if (out_csv.has_parent_path()) std::filesystem::create_directories(out_csv.parent_path());
        write_text(out_csv, csv);
    }
    return rows;
}

}  // namespace evpt
