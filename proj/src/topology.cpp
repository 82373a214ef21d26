#include "evpt/topology.hpp"

#include "evpt/errors.hpp"

namespace evpt {

const MotorGroup* PowertrainConfig::group_on(Axle axle) const noexcept {
    for (const auto& g : groups) {
        if (g.axle == axle) return &g;
    }
    return nullptr;
}

int PowertrainConfig::total_motor_count() const noexcept {
    int n = 0;
    for (const auto& g : groups) n += g.count;
    return n;
}

PowertrainConfig instantiate(
    TopologyKind kind, const DesignPoint& design,
    const std::map<MotorTech, std::shared_ptr<const ReferentMotor>>& referents,
    const TopologyOptions& options) {
    const auto referent_for = [&](MotorTech tech) {
        const auto it = referents.find(tech);
        if (it == referents.end() || !it->second) {
            throw ConfigError("no referent motor provided for " + to_string(tech));
        }
        return it->second;
    };

    PowertrainConfig config;
    config.label = to_string(kind);
    config.front_split = design.front_split;
    const ScalingFactors k{design.radial, design.axial};

    switch (kind) {
        case TopologyKind::RWD_RFM: {
            config.topology = Topology{DriveLayout::RWD, 1, 0.7, MotorTech::RFM, false};
            const Transmission gear{design.gear_ratio, options.gear_efficiency};
            config.groups.push_back(
                MotorGroup{Axle::Rear, 1, ScaledMotor(referent_for(MotorTech::RFM), k), gear});
            break;
        }
        case TopologyKind::AWD_RFM: {
            config.topology = Topology{DriveLayout::AWD, 1, 1.0, MotorTech::RFM, false};
            const Transmission gear{design.gear_ratio, options.gear_efficiency};
            config.groups.push_back(
                MotorGroup{Axle::Front, 1, ScaledMotor(referent_for(MotorTech::RFM), k), gear});
            config.groups.push_back(
                MotorGroup{Axle::Rear, 1, ScaledMotor(referent_for(MotorTech::RFM), k), gear});
            break;
        }
        case TopologyKind::AWD_AFM: {
            config.topology = Topology{DriveLayout::AWD, 2, 1.0, MotorTech::AFM, true};
            const Transmission direct{1.0, 1.0};  // in-wheel, no gearbox
            config.groups.push_back(
                MotorGroup{Axle::Front, 2, ScaledMotor(referent_for(MotorTech::AFM), k), direct});
            config.groups.push_back(
                MotorGroup{Axle::Rear, 2, ScaledMotor(referent_for(MotorTech::AFM), k), direct});
            break;
        }
        default:
            throw ConfigError("unknown topology kind");
    }
    if (options.regen_fraction >= 0.0) {
        config.topology.regen_fraction = options.regen_fraction;
    }
    if (options.motors_per_axle > 0) {
        config.topology.motors_per_axle = options.motors_per_axle;
        for (auto& g : config.groups) g.count = options.motors_per_axle;
    }
    config.topology.validate();
    for (auto& g : config.groups) g.transmission.validate();
    return config;
}

TopologyReport aggregate_report(const PowertrainConfig& config, double energy_kwh,
                                double accel_time_s, double top_speed_kmh) {
    TopologyReport report;
    report.label = config.label;
    report.energy_kwh = energy_kwh;
    report.accel_time_s = accel_time_s;
    report.top_speed_kmh = top_speed_kmh;
    report.motor_count = config.total_motor_count();
    for (const auto& g : config.groups) {
        const MassCost mc = g.motor.mass_and_cost();
        report.motor_mass_kg += g.count * mc.mass_kg;
        report.motor_cost_eur += g.count * mc.cost_eur;
    }
    return report;
}

TopologyKind topology_kind_from_string(const std::string& name) {
    if (name == "RWD_RFM") return TopologyKind::RWD_RFM;
    if (name == "AWD_RFM") return TopologyKind::AWD_RFM;
    if (name == "AWD_AFM") return TopologyKind::AWD_AFM;
    throw ConfigError("unknown topology '" + name + "' (expected RWD_RFM, AWD_RFM or AWD_AFM)");
}

std::string to_string(TopologyKind kind) {
    switch (kind) {
        case TopologyKind::RWD_RFM: return "RWD_RFM";
        case TopologyKind::AWD_RFM: return "AWD_RFM";
        case TopologyKind::AWD_AFM: return "AWD_AFM";
    }
    return "?";
}

}  // namespace evpt
