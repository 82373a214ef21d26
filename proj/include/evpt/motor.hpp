#pragma once

#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "evpt/vehicle.hpp"

namespace evpt {

// Geometric scaling factors applied to a referent design: `radial`
// multiplies all radial dimensions, `axial` stretches the core length.
struct ScalingFactors {
    double radial = 1.0;
    double axial = 1.0;

    void validate() const;  // both strictly positive
};

// Winding geometry of the referent design, inputs to the geometric
// phase-resistance evaluation.
struct WindingGeometry {
    double parallel_paths = 1.0;
    double resistivity_ohm_m = 0.0;   // conductor resistivity
    double mean_turn_length_m = 0.0;
    double coil_count = 0.0;
    double stator_slots = 0.0;
    double slot_area_m2 = 0.0;
    double fill_factor = 0.0;         // in (0, 1)

    void validate() const;
};

// Speed-polynomial loss coefficients of the referent design.
struct LossCoefficients {
    double iron_hysteresis_w_s = 0.0;   // P_fe += c * speed
    double iron_eddy_w_s2 = 0.0;        // P_fe += c * speed^2
    double bearing_w_s = 0.0;           // P_br  = c * speed
    double windage_quad_w_s2 = 0.0;     // P_wind += c * speed^2
    double windage_cube_w_s3 = 0.0;     // P_wind += c * speed^3

    void validate() const;  // all non-negative
};

// One material block of the referent design; mass and cost derive from the
// scaled volume.
struct MotorComponent {
    std::string name;
    double volume_m3 = 0.0;
    double density_kg_m3 = 0.0;
    double specific_cost_eur_kg = 0.0;
};

// Full unscaled motor description. All quantities refer to the referent
// scale (factor 1 in both directions).
struct ReferentMotor {
    std::string name;
    MotorTech tech = MotorTech::RFM;
    double nominal_torque_nm = 0.0;
    double nominal_power_w = 0.0;
    double max_speed_rad_s = 0.0;
    double base_speed_rad_s = 0.0;
    double phase_inductance_h = 0.0;
    double flux_linkage_wb = 0.0;
    double phase_resistance_ohm = 0.0;
    double nominal_current_a = 0.0;
    WindingGeometry geometry;
    LossCoefficients loss;
    std::vector<MotorComponent> components;

    // Referent copper losses at nominal current.
    [[nodiscard]] double nominal_copper_losses_w() const noexcept;
    [[nodiscard]] double total_volume_m3() const noexcept;

    // Checks positivity, nominal power consistency (torque * base speed
    // within 1%), and that the stored phase resistance matches the
    // geometric evaluation. Throws MalformedData.
    void validate() const;

    // Loads and validates a referent motor JSON document (mandatory
    // schema_version field). Throws MalformedData.
    static ReferentMotor load(const std::filesystem::path& path);
};

// Parameters of a scaled design.
struct ScaledParameters {
    double torque_nm = 0.0;        // radial^3 * axial
    double power_w = 0.0;          // radial^3 * axial
    double inductance_h = 0.0;     // radial^2 * axial
    double flux_linkage_wb = 0.0;  // radial^2 * axial
    double resistance_ohm = 0.0;   // radial * axial
    double current_a = 0.0;        // radial
    double volume_m3 = 0.0;        // radial^2 * axial
};

struct MassCost {
    double mass_kg = 0.0;
    double cost_eur = 0.0;
};

// A referent design plus scaling factors. Scaled quantities are evaluated
// on demand through power laws in the two factors; the object is immutable
// and cheap to copy.
class ScaledMotor {
public:
    ScaledMotor(std::shared_ptr<const ReferentMotor> referent, ScalingFactors k);

    [[nodiscard]] const ReferentMotor& referent() const noexcept { return *referent_; }
    [[nodiscard]] const ScalingFactors& factors() const noexcept { return k_; }

    [[nodiscard]] ScaledParameters scaled_parameters() const noexcept;

    // Resistive winding losses 3 I^2 R at the scaled phase resistance.
    [[nodiscard]] double copper_losses(double current_a) const;

    // Phase current for a torque request under the linear torque-current
    // assumption. Throws InfeasibleOperatingPoint above the scaled nominal
    // torque ceiling (speed-dependent power limiting is the simulation's
    // check).
    [[nodiscard]] double operating_current(double torque_nm) const;

    [[nodiscard]] double iron_losses(double speed_rad_s) const;
    [[nodiscard]] double bearing_losses(double speed_rad_s) const;
    [[nodiscard]] double windage_losses(double speed_rad_s) const;

    // Total electric input power: shaft power plus all loss components.
    // Negative torque (regeneration) yields less recovered power than the
    // mechanical braking power by exactly the losses.
    [[nodiscard]] double electrical_power(double torque_nm, double speed_rad_s) const;

    // Constant-torque / constant-power envelope; zero above the maximum
    // speed. The speed axis is unchanged by scaling since torque and power
    // share the same factor.
    [[nodiscard]] double torque_limit(double speed_rad_s) const;

    [[nodiscard]] MassCost mass_and_cost() const noexcept;

private:
    std::shared_ptr<const ReferentMotor> referent_;
    ScalingFactors k_;
};

// Evaluates the phase resistance from first principles on the scaled
// geometry: slot area grows with radial*axial, mean turn length with
// radial, fill factor shrinks with 1/radial, and the coil count grows with
// axial to preserve the slot current density. Algebraically identical to
// the radial*axial power law on the referent resistance.
[[nodiscard]] double phase_resistance_geometric(const WindingGeometry& g, const ScalingFactors& k);

// Rectangle-rule energy integral of a power trace, reported in kWh.
[[nodiscard]] double integrate_energy_kwh(std::span<const double> power_w, double step_s);

}  // namespace evpt
