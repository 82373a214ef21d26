#include "evpt.h"

#include <cstring>
#include <memory>
#include <string>

#include "evpt/drive_cycle.hpp"
#include "evpt/errors.hpp"
#include "evpt/motor.hpp"
#include "evpt/report.hpp"
#include "evpt/run_config.hpp"
#include "evpt/topology.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

evpt_status classify(const std::exception& e) {
    using namespace evpt;
    if (dynamic_cast<const MalformedCycle*>(&e)) return EVPT_ERROR_MALFORMED_CYCLE;
    if (dynamic_cast<const MalformedData*>(&e)) return EVPT_ERROR_MALFORMED_DATA;
    if (dynamic_cast<const InvalidControl*>(&e)) return EVPT_ERROR_INVALID_CONTROL;
    if (dynamic_cast<const InfeasibleOperatingPoint*>(&e)) return EVPT_ERROR_INFEASIBLE;
    if (dynamic_cast<const NumericalDivergence*>(&e)) return EVPT_ERROR_NUMERIC;
    if (dynamic_cast<const ConfigError*>(&e)) return EVPT_ERROR_CONFIG;
    if (dynamic_cast<const InvalidStart*>(&e)) return EVPT_ERROR_INVALID_ARGUMENT;
    return EVPT_ERROR_INTERNAL;
}

template <typename Fn>
evpt_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return EVPT_OK;
    } catch (const std::exception& e) {
        set_error(e.what());
        return classify(e);
    } catch (...) {
        set_error("unknown error");
        return EVPT_ERROR_INTERNAL;
    }
}

evpt_status missing_file_or(const char* path, evpt_status fallback) {
    return std::filesystem::exists(path) ? fallback : EVPT_ERROR_IO;
}

}  // namespace

struct evpt_cycle {
    evpt::DriveCycle cycle;
};

struct evpt_motor {
    std::shared_ptr<const evpt::ReferentMotor> referent;
    std::string tech;
};

struct evpt_config {
    evpt::RunConfig config;
};

extern "C" {

const char* evpt_version(void) { return "1.0.0"; }

const char* evpt_status_name(evpt_status status) {
    switch (status) {
        case EVPT_OK: return "ok";
        case EVPT_ERROR_IO: return "io";
        case EVPT_ERROR_PARSE: return "parse";
        case EVPT_ERROR_INVALID_ARGUMENT: return "invalid_argument";
        case EVPT_ERROR_MALFORMED_CYCLE: return "malformed_cycle";
        case EVPT_ERROR_MALFORMED_DATA: return "malformed_data";
        case EVPT_ERROR_INVALID_CONTROL: return "invalid_control";
        case EVPT_ERROR_INFEASIBLE: return "infeasible";
        case EVPT_ERROR_NUMERIC: return "numeric";
        case EVPT_ERROR_CONFIG: return "config";
        case EVPT_ERROR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* evpt_last_error(void) { return g_last_error.c_str(); }

evpt_status evpt_cycle_load(const char* path, const char* speed_unit, evpt_cycle** out_cycle) {
    if (path == nullptr || out_cycle == nullptr) {
        set_error("path and out_cycle must not be null");
        return EVPT_ERROR_INVALID_ARGUMENT;
    }
    evpt::SpeedUnit unit = evpt::SpeedUnit::KilometersPerHour;
    if (speed_unit != nullptr && std::strcmp(speed_unit, "ms") == 0) {
        unit = evpt::SpeedUnit::MetersPerSecond;
    } else if (speed_unit != nullptr && std::strcmp(speed_unit, "kmh") != 0) {
        set_error("speed_unit must be 'kmh' or 'ms'");
        return EVPT_ERROR_INVALID_ARGUMENT;
    }
    const evpt_status status = guarded([&] {
        auto handle = std::make_unique<evpt_cycle>(evpt_cycle{evpt::load_cycle(path, unit)});
        *out_cycle = handle.release();
    });
    return status == EVPT_OK ? status : missing_file_or(path, status);
}

void evpt_cycle_free(evpt_cycle* cycle) { delete cycle; }

evpt_status evpt_cycle_sample_count(const evpt_cycle* cycle, size_t* out_count) {
    if (cycle == nullptr || out_count == nullptr) {
        set_error("cycle and out_count must not be null");
        return EVPT_ERROR_INVALID_ARGUMENT;
    }
    *out_count = cycle->cycle.size();
    return EVPT_OK;
}

evpt_status evpt_cycle_duration_s(const evpt_cycle* cycle, double* out_duration) {
    if (cycle == nullptr || out_duration == nullptr) {
        set_error("cycle and out_duration must not be null");
        return EVPT_ERROR_INVALID_ARGUMENT;
    }
    *out_duration = cycle->cycle.duration_s();
    return EVPT_OK;
}

evpt_status evpt_cycle_distance_m(const evpt_cycle* cycle, double* out_distance) {
    if (cycle == nullptr || out_distance == nullptr) {
        set_error("cycle and out_distance must not be null");
        return EVPT_ERROR_INVALID_ARGUMENT;
    }
    *out_distance = cycle->cycle.distance_m();
    return EVPT_OK;
}

evpt_status evpt_motor_load(const char* path, evpt_motor** out_motor) {
    if (path == nullptr || out_motor == nullptr) {
        set_error("path and out_motor must not be null");
        return EVPT_ERROR_INVALID_ARGUMENT;
    }
    const evpt_status status = guarded([&] {
        auto referent = std::make_shared<const evpt::ReferentMotor>(
            evpt::ReferentMotor::load(path));
        auto handle = std::make_unique<evpt_motor>();
        handle->tech = evpt::to_string(referent->tech);
        handle->referent = std::move(referent);
        *out_motor = handle.release();
    });
    return status == EVPT_OK ? status : missing_file_or(path, status);
}

void evpt_motor_free(evpt_motor* motor) { delete motor; }

const char* evpt_motor_tech(const evpt_motor* motor) {
    return motor != nullptr ? motor->tech.c_str() : "";
}

evpt_status evpt_motor_scaled_params(const evpt_motor* motor, double radial, double axial,
                                     evpt_scaled_params* out_params) {
    if (motor == nullptr || out_params == nullptr) {
        set_error("motor and out_params must not be null");
        return EVPT_ERROR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        const evpt::ScaledMotor scaled(motor->referent, evpt::ScalingFactors{radial, axial});
        const evpt::ScaledParameters p = scaled.scaled_parameters();
        *out_params = evpt_scaled_params{p.torque_nm, p.power_w,        p.inductance_h,
                                         p.flux_linkage_wb, p.resistance_ohm, p.current_a,
                                         p.volume_m3};
    });
}

evpt_status evpt_motor_losses(const evpt_motor* motor, double radial, double axial,
                              double torque_nm, double speed_rad_s,
                              evpt_loss_breakdown* out_losses) {
    if (motor == nullptr || out_losses == nullptr) {
        set_error("motor and out_losses must not be null");
        return EVPT_ERROR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        const evpt::ScaledMotor scaled(motor->referent, evpt::ScalingFactors{radial, axial});
        const double current = scaled.operating_current(torque_nm);
        evpt_loss_breakdown losses;
        losses.copper_w = scaled.copper_losses(current);
        losses.iron_w = scaled.iron_losses(speed_rad_s);
        losses.bearing_w = scaled.bearing_losses(speed_rad_s);
        losses.windage_w = scaled.windage_losses(speed_rad_s);
        losses.shaft_w = torque_nm * speed_rad_s;
        losses.electrical_w = losses.shaft_w + losses.copper_w + losses.iron_w +
                              losses.bearing_w + losses.windage_w;
        *out_losses = losses;
    });
}

evpt_status evpt_motor_torque_limit(const evpt_motor* motor, double radial, double axial,
                                    double speed_rad_s, double* out_torque_nm) {
    if (motor == nullptr || out_torque_nm == nullptr) {
        set_error("motor and out_torque_nm must not be null");
        return EVPT_ERROR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        const evpt::ScaledMotor scaled(motor->referent, evpt::ScalingFactors{radial, axial});
        *out_torque_nm = scaled.torque_limit(speed_rad_s);
    });
}

evpt_status evpt_motor_mass_cost(const evpt_motor* motor, double radial, double axial,
                                 double* out_mass_kg, double* out_cost_eur) {
    if (motor == nullptr || out_mass_kg == nullptr || out_cost_eur == nullptr) {
        set_error("motor and output pointers must not be null");
        return EVPT_ERROR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        const evpt::ScaledMotor scaled(motor->referent, evpt::ScalingFactors{radial, axial});
        const evpt::MassCost mc = scaled.mass_and_cost();
        *out_mass_kg = mc.mass_kg;
        *out_cost_eur = mc.cost_eur;
    });
}

evpt_status evpt_config_load(const char* path, evpt_config** out_config) {
    if (path == nullptr || out_config == nullptr) {
        set_error("path and out_config must not be null");
        return EVPT_ERROR_INVALID_ARGUMENT;
    }
    const evpt_status status = guarded([&] {
        auto handle = std::make_unique<evpt_config>(evpt_config{evpt::RunConfig::load(path)});
        *out_config = handle.release();
    });
    return status == EVPT_OK ? status : missing_file_or(path, status);
}

void evpt_config_free(evpt_config* config) { delete config; }

evpt_status evpt_config_set_seed(evpt_config* config, uint64_t seed) {
    if (config == nullptr) {
        set_error("config must not be null");
        return EVPT_ERROR_INVALID_ARGUMENT;
    }
    config->config.seed = seed;
    config->config.optimizer.seed = seed;
    return EVPT_OK;
}

evpt_status evpt_config_set_output_dir(evpt_config* config, const char* dir) {
    if (config == nullptr || dir == nullptr) {
        set_error("config and dir must not be null");
        return EVPT_ERROR_INVALID_ARGUMENT;
    }
    config->config.output_dir = dir;
    return EVPT_OK;
}

evpt_status evpt_config_set_topologies(evpt_config* config, const char* names) {
    if (config == nullptr || names == nullptr) {
        set_error("config and names must not be null");
        return EVPT_ERROR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        std::vector<evpt::TopologyRequest> requests;
        const std::string list(names);
        std::size_t pos = 0;
        while (pos < list.size()) {
            auto comma = list.find(',', pos);
            if (comma == std::string::npos) comma = list.size();
            std::string token = list.substr(pos, comma - pos);
            while (!token.empty() && token.front() == ' ') token.erase(token.begin());
            while (!token.empty() && token.back() == ' ') token.pop_back();
            if (!token.empty()) {
                evpt::TopologyRequest request;
                request.kind = evpt::topology_kind_from_string(token);
                // keep per-topology overrides for kinds already configured
                for (const auto& existing : config->config.topologies) {
                    if (existing.kind == request.kind) request = existing;
                }
                requests.push_back(request);
            }
            pos = comma + 1;
        }
        if (requests.empty()) {
            throw evpt::ConfigError("topology list is empty");
        }
        config->config.topologies = std::move(requests);
    });
}

evpt_status evpt_run(const evpt_config* config, int* out_all_converged) {
    if (config == nullptr) {
        set_error("config must not be null");
        return EVPT_ERROR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        const evpt::RunOutcome outcome = evpt::run(config->config);
        if (out_all_converged != nullptr) {
            *out_all_converged = outcome.all_converged ? 1 : 0;
        }
    });
}

evpt_status evpt_sweep(const evpt_config* config, const char* quantity, const char* grid_spec,
                       const char* tech, const char* out_csv_path) {
    if (config == nullptr || quantity == nullptr || grid_spec == nullptr ||
        out_csv_path == nullptr) {
        set_error("config, quantity, grid_spec and out_csv_path must not be null");
        return EVPT_ERROR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        evpt::MotorTech motor_tech = evpt::MotorTech::AFM;
        if (tech != nullptr && std::strcmp(tech, "RFM") == 0) {
            motor_tech = evpt::MotorTech::RFM;
        } else if (tech != nullptr && std::strcmp(tech, "AFM") != 0) {
            throw evpt::ConfigError("tech must be 'AFM' or 'RFM'");
        }
        (void)evpt::sweep(config->config, quantity, grid_spec, motor_tech, out_csv_path);
    });
}

}  // extern "C"
