#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "evpt/motor.hpp"

namespace evpt {

// Loss streams that can be injected into network nodes.
enum class LossSource { Copper = 0, Iron = 1, Bearing = 2, Windage = 3 };
inline constexpr int kLossSourceCount = 4;

// Resistance classes with distinct geometric scaling behavior.
enum class ResistanceClass {
    AxialConduction,     // R scales with axial / radial^2
    RadialConduction,    // R scales with 1 / axial
    Contact,             // interface area scaling, see ContactInterface
    ConvectionInternal,  // area and rotor tip-speed scaling
    ConvectionExternal,  // area scaling; speed exponent usually 0
};

enum class ContactInterface {
    Annular,      // face normal to the shaft: area ~ radial^2
    Cylindrical,  // lateral interface: area ~ radial * axial
};

// Convective surface growth under scaling.
enum class AreaScaling {
    RadialFace,   // ~ radial^2
    Cylindrical,  // ~ radial * axial
};

struct ThermalNode {
    std::string name;
    double heat_capacity_j_k = 0.0;  // at referent scale
    // Fraction of each loss source injected at this node.
    std::array<double, kLossSourceCount> injection{0.0, 0.0, 0.0, 0.0};
};

struct ThermalResistance {
    std::string from;
    std::string to;
    double value_k_w = 0.0;  // at referent scale and reference speed
    ResistanceClass cls = ResistanceClass::Contact;
    ContactInterface interface = ContactInterface::Annular;
    AreaScaling area = AreaScaling::RadialFace;
    double speed_exponent = 0.8;  // convective tip-speed exponent
};

// Lumped-parameter thermal network template at referent scale. The node
// named "ambient" is the fixed-temperature boundary and carries no state.
struct ThermalNetwork {
    std::vector<ThermalNode> nodes;  // excluding ambient
    std::vector<ThermalResistance> resistances;
    double ambient_c = 20.0;
    double initial_c = 20.0;               // uniform initial temperature
    double reference_speed_rad_s = 100.0;  // speed at which convection values hold

    [[nodiscard]] int node_index(const std::string& name) const;  // -1 for ambient

    // Connectivity (ambient reachable from every node), positivity, and
    // per-source injection weights summing to 1. Throws MalformedData.
    void validate() const;

    static ThermalNetwork load(const std::filesystem::path& path);
};

// Applies the geometric scaling rules to every capacity and resistance.
// Capacities grow with the component volume (radial^2 * axial); conduction
// and contact resistances follow their class rules; convection resistances
// additionally scale with the rotor tip speed ratio at `speed_rad_s`.
[[nodiscard]] ThermalNetwork scale_network(const ThermalNetwork& net, const ScalingFactors& k,
                                           double speed_rad_s);

// Advances node temperatures by one step of explicit Euler, internally
// sub-stepping to satisfy dt_sub <= 0.5 * min_i(C_i / sum_j G_ij).
// Q holds injected power per node. Throws NumericalDivergence on
// non-finite temperatures.
[[nodiscard]] std::vector<double> step(const ThermalNetwork& net, std::vector<double> temps_c,
                                       const std::vector<double>& injected_w, double step_s);

// Per-source loss traces to feed a cycle simulation, one value per sample.
struct LossTraces {
    std::vector<double> copper_w;
    std::vector<double> iron_w;
    std::vector<double> bearing_w;
    std::vector<double> windage_w;
};

struct ThermalSimResult {
    std::vector<std::string> node_names;
    std::vector<std::vector<double>> traces_c;  // [node][sample], empty when not recorded
    std::vector<double> peak_c;                 // [node]
    [[nodiscard]] double peak_of(const std::string& node_name) const;
};

// Simulates the scaled network over a drive cycle. Losses are distributed
// per the injection weights; convection resistances are re-evaluated each
// step from the current shaft speed.
[[nodiscard]] ThermalSimResult simulate_cycle(const ThermalNetwork& referent,
                                              const ScalingFactors& k, const LossTraces& losses,
                                              const std::vector<double>& speed_rad_s,
                                              double step_s, bool record_traces = true);

[[nodiscard]] std::string to_string(LossSource source);

}  // namespace evpt
