#include "evpt/motor.hpp"

#include <cmath>
#include <fstream>
#include <utility>

#include <json.hpp>

#include "evpt/errors.hpp"

namespace evpt {

namespace {

void require_positive(double value, const std::string& name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw MalformedData("motor." + name + " must be positive and finite");
    }
}

void require_non_negative(double value, const std::string& name) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw MalformedData("motor." + name + " must be non-negative and finite");
    }
}

}  // namespace

void ScalingFactors::validate() const {
    if (!(radial > 0.0) || !(axial > 0.0)) {
        throw MalformedData("scaling factors must be strictly positive");
    }
}

void WindingGeometry::validate() const {
    require_positive(parallel_paths, "geometry.parallel_paths");
    require_positive(resistivity_ohm_m, "geometry.resistivity_ohm_m");
    require_positive(mean_turn_length_m, "geometry.mean_turn_length_m");
    require_positive(coil_count, "geometry.coil_count");
    require_positive(stator_slots, "geometry.stator_slots");
    require_positive(slot_area_m2, "geometry.slot_area_m2");
    if (!(fill_factor > 0.0 && fill_factor < 1.0)) {
        throw MalformedData("motor.geometry.fill_factor must lie in (0, 1)");
    }
}

void LossCoefficients::validate() const {
    require_non_negative(iron_hysteresis_w_s, "loss.iron_hysteresis_w_s");
    require_non_negative(iron_eddy_w_s2, "loss.iron_eddy_w_s2");
    require_non_negative(bearing_w_s, "loss.bearing_w_s");
    require_non_negative(windage_quad_w_s2, "loss.windage_quad_w_s2");
    require_non_negative(windage_cube_w_s3, "loss.windage_cube_w_s3");
}

double ReferentMotor::nominal_copper_losses_w() const noexcept {
    return 3.0 * nominal_current_a * nominal_current_a * phase_resistance_ohm;
}

double ReferentMotor::total_volume_m3() const noexcept {
    double v = 0.0;
    for (const auto& c : components) v += c.volume_m3;
    return v;
}

void ReferentMotor::validate() const {
    require_positive(nominal_torque_nm, "nominal_torque_nm");
    require_positive(nominal_power_w, "nominal_power_w");
    require_positive(max_speed_rad_s, "max_speed_rad_s");
    require_positive(base_speed_rad_s, "base_speed_rad_s");
    require_positive(phase_inductance_h, "phase_inductance_h");
    require_positive(flux_linkage_wb, "flux_linkage_wb");
    require_positive(phase_resistance_ohm, "phase_resistance_ohm");
    require_positive(nominal_current_a, "nominal_current_a");
    geometry.validate();
    loss.validate();
    if (base_speed_rad_s > max_speed_rad_s) {
        throw MalformedData("motor base speed exceeds max speed");
    }
    const double power_from_torque = nominal_torque_nm * base_speed_rad_s;
    if (std::abs(power_from_torque - nominal_power_w) > 0.01 * nominal_power_w) {
        throw MalformedData("motor '" + name +
                            "': nominal power inconsistent with torque * base speed");
    }
    const double geometric = phase_resistance_geometric(geometry, ScalingFactors{1.0, 1.0});
    if (std::abs(geometric - phase_resistance_ohm) > 1e-9 * phase_resistance_ohm) {
        throw MalformedData("motor '" + name +
                            "': stored phase resistance disagrees with winding geometry");
    }
    if (components.empty()) {
        throw MalformedData("motor '" + name + "': component list empty");
    }
    for (const auto& c : components) {
        require_positive(c.volume_m3, "component " + c.name + " volume");
        require_positive(c.density_kg_m3, "component " + c.name + " density");
        require_non_negative(c.specific_cost_eur_kg, "component " + c.name + " specific cost");
    }
}

ReferentMotor ReferentMotor::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw MalformedData("motor file not readable: " + path.string());
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in, nullptr, true, true);  // allow comments
    } catch (const nlohmann::json::exception& e) {
        throw MalformedData("motor file " + path.string() + ": " + e.what());
    }
    try {
        if (!doc.contains("schema_version")) {
            throw MalformedData("motor file " + path.string() + ": missing schema_version");
        }
        if (doc.at("schema_version").get<int>() != 1) {
            throw MalformedData("motor file " + path.string() + ": unsupported schema_version");
        }
        ReferentMotor m;
        m.name = doc.value("name", path.stem().string());
        const auto tech = doc.at("tech").get<std::string>();
        if (tech == "AFM") {
            m.tech = MotorTech::AFM;
        } else if (tech == "RFM") {
            m.tech = MotorTech::RFM;
        } else {
            throw MalformedData("motor file " + path.string() + ": unknown tech '" + tech + "'");
        }
        m.nominal_torque_nm = doc.at("nominal_torque_nm").get<double>();
        m.nominal_power_w = doc.at("nominal_power_w").get<double>();
        m.max_speed_rad_s = doc.at("max_speed_rad_s").get<double>();
        m.base_speed_rad_s = doc.at("base_speed_rad_s").get<double>();
        m.phase_inductance_h = doc.at("phase_inductance_h").get<double>();
        m.flux_linkage_wb = doc.at("flux_linkage_wb").get<double>();
        m.phase_resistance_ohm = doc.at("phase_resistance_ohm").get<double>();
        m.nominal_current_a = doc.at("nominal_current_a").get<double>();

        const auto& g = doc.at("geometry");
        m.geometry.parallel_paths = g.at("parallel_paths").get<double>();
        m.geometry.resistivity_ohm_m = g.at("resistivity_ohm_m").get<double>();
        m.geometry.mean_turn_length_m = g.at("mean_turn_length_m").get<double>();
        m.geometry.coil_count = g.at("coil_count").get<double>();
        m.geometry.stator_slots = g.at("stator_slots").get<double>();
        m.geometry.slot_area_m2 = g.at("slot_area_m2").get<double>();
        m.geometry.fill_factor = g.at("fill_factor").get<double>();

        const auto& l = doc.at("loss_coefficients");
        m.loss.iron_hysteresis_w_s = l.at("iron_hysteresis_w_s").get<double>();
        m.loss.iron_eddy_w_s2 = l.at("iron_eddy_w_s2").get<double>();
        m.loss.bearing_w_s = l.at("bearing_w_s").get<double>();
        m.loss.windage_quad_w_s2 = l.at("windage_quad_w_s2").get<double>();
        m.loss.windage_cube_w_s3 = l.at("windage_cube_w_s3").get<double>();

        for (const auto& c : doc.at("components")) {
            MotorComponent comp;
            comp.name = c.at("name").get<std::string>();
            comp.volume_m3 = c.at("volume_m3").get<double>();
            comp.density_kg_m3 = c.at("density_kg_m3").get<double>();
            comp.specific_cost_eur_kg = c.at("specific_cost_eur_kg").get<double>();
            m.components.push_back(std::move(comp));
        }
        m.validate();
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw MalformedData("motor file " + path.string() + ": " + e.what());
    }
}

ScaledMotor::ScaledMotor(std::shared_ptr<const ReferentMotor> referent, ScalingFactors k)
    : referent_(std::move(referent)), k_(k) {
    k_.validate();
}

ScaledParameters ScaledMotor::scaled_parameters() const noexcept {
    const double r = k_.radial;
    const double a = k_.axial;
    const double r2a = r * r * a;
    const double r3a = r * r2a;
    const ReferentMotor& m = *referent_;
    ScaledParameters p;
    p.torque_nm = r3a * m.nominal_torque_nm;
    p.power_w = r3a * m.nominal_power_w;
    p.inductance_h = r2a * m.phase_inductance_h;
    p.flux_linkage_wb = r2a * m.flux_linkage_wb;
    p.resistance_ohm = r * a * m.phase_resistance_ohm;
    p.current_a = r * m.nominal_current_a;
    p.volume_m3 = r2a * m.total_volume_m3();
    return p;
}

double ScaledMotor::copper_losses(double current_a) const {
    if (!(current_a >= 0.0)) {
        throw InfeasibleOperatingPoint("phase current must be non-negative");
    }
    const double resistance = k_.radial * k_.axial * referent_->phase_resistance_ohm;
    return 3.0 * current_a * current_a * resistance;
}

double ScaledMotor::operating_current(double torque_nm) const {
    const double torque_ceiling = k_.radial * k_.radial * k_.radial * k_.axial *
                                  referent_->nominal_torque_nm;
    const double magnitude = std::abs(torque_nm);
    if (magnitude > torque_ceiling * (1.0 + 1e-12)) {
        throw InfeasibleOperatingPoint("torque request exceeds the scaled nominal torque");
    }
    const double nominal_current = k_.radial * referent_->nominal_current_a;
    return nominal_current * magnitude / torque_ceiling;
}

double ScaledMotor::iron_losses(double speed_rad_s) const {
    if (!(speed_rad_s >= 0.0)) {
        throw InfeasibleOperatingPoint("shaft speed must be non-negative");
    }
    const double scale = k_.radial * k_.radial * k_.axial;
    return scale * (referent_->loss.iron_hysteresis_w_s * speed_rad_s +
                    referent_->loss.iron_eddy_w_s2 * speed_rad_s * speed_rad_s);
}

double ScaledMotor::bearing_losses(double speed_rad_s) const {
    if (!(speed_rad_s >= 0.0)) {
        throw InfeasibleOperatingPoint("shaft speed must be non-negative");
    }
    const double scale = k_.radial * k_.radial * k_.radial * k_.axial;
    return scale * referent_->loss.bearing_w_s * speed_rad_s;
}

double ScaledMotor::windage_losses(double speed_rad_s) const {
    if (!(speed_rad_s >= 0.0)) {
        throw InfeasibleOperatingPoint("shaft speed must be non-negative");
    }
    const double r = k_.radial;
    const double scale = r * r * r * r * r;
    return scale * (referent_->loss.windage_quad_w_s2 * speed_rad_s * speed_rad_s +
                    referent_->loss.windage_cube_w_s3 * speed_rad_s * speed_rad_s * speed_rad_s);
}

double ScaledMotor::electrical_power(double torque_nm, double speed_rad_s) const {
    const double current = operating_current(torque_nm);
    return torque_nm * speed_rad_s + copper_losses(current) + iron_losses(speed_rad_s) +
           bearing_losses(speed_rad_s) + windage_losses(speed_rad_s);
}

double ScaledMotor::torque_limit(double speed_rad_s) const {
    if (speed_rad_s > referent_->max_speed_rad_s) return 0.0;
    const double scale = k_.radial * k_.radial * k_.radial * k_.axial;
    const double torque_cap = scale * referent_->nominal_torque_nm;
    if (speed_rad_s <= 0.0) return torque_cap;
    const double power_cap = scale * referent_->nominal_power_w / speed_rad_s;
    return std::min(torque_cap, power_cap);
}

MassCost ScaledMotor::mass_and_cost() const noexcept {
    const double volume_scale = k_.radial * k_.radial * k_.axial;
    MassCost out;
    for (const auto& c : referent_->components) {
        const double mass = c.density_kg_m3 * volume_scale * c.volume_m3;
        out.mass_kg += mass;
        out.cost_eur += mass * c.specific_cost_eur_kg;
    }
    return out;
}

double phase_resistance_geometric(const WindingGeometry& g, const ScalingFactors& k) {
    const double slot_area = k.radial * k.axial * g.slot_area_m2;
    const double turn_length = k.radial * g.mean_turn_length_m;
    const double fill_factor = g.fill_factor / k.radial;
    const double coil_count = k.axial * g.coil_count;
    const double series_turns = turn_length * (coil_count / g.parallel_paths) *
                                (g.stator_slots / 3.0);
    const double conductor_area = 0.5 * (slot_area / coil_count) * fill_factor;
    return (1.0 / g.parallel_paths) * g.resistivity_ohm_m * series_turns / conductor_area;
}

double integrate_energy_kwh(std::span<const double> power_w, double step_s) {
    double joules = 0.0;
    for (double p : power_w) joules += p * step_s;
    return joules / 3.6e6;
}

}  // namespace evpt
