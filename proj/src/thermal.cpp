#include "evpt/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <queue>

#include <json.hpp>

#include "evpt/errors.hpp"

namespace evpt {

namespace {

constexpr const char* kAmbientName = "ambient";

double scaled_capacity(double c0, const ScalingFactors& k) {
    return k.radial * k.radial * k.axial * c0;  // volume rule
}

// Resistance after geometric scaling; convection additionally depends on
// the rotor tip speed ratio (relative speed already multiplied by radial).
double scaled_resistance(const ThermalResistance& r, const ScalingFactors& k,
                         double relative_tip_speed) {
    switch (r.cls) {
        case ResistanceClass::AxialConduction:
            return r.value_k_w * k.axial / (k.radial * k.radial);
        case ResistanceClass::RadialConduction:
            return r.value_k_w / k.axial;
        case ResistanceClass::Contact:
            if (r.interface == ContactInterface::Cylindrical) {
                return r.value_k_w / (k.radial * k.axial);
            }
            return r.value_k_w / (k.radial * k.radial);
        case ResistanceClass::ConvectionInternal:
        case ResistanceClass::ConvectionExternal: {
            const double area_ratio = r.area == AreaScaling::Cylindrical
                                          ? k.radial * k.axial
                                          : k.radial * k.radial;
            const double speed_gain =
                r.speed_exponent == 0.0
                    ? 1.0
                    : std::pow(std::max(relative_tip_speed, 0.0), r.speed_exponent);
            return r.value_k_w / (area_ratio * speed_gain);
        }
    }
    return r.value_k_w;
}

ResistanceClass class_from_string(const std::string& s) {
    if (s == "axial_conduction") return ResistanceClass::AxialConduction;
    if (s == "radial_conduction") return ResistanceClass::RadialConduction;
    if (s == "contact") return ResistanceClass::Contact;
    if (s == "convection_internal") return ResistanceClass::ConvectionInternal;
    if (s == "convection_external") return ResistanceClass::ConvectionExternal;
    throw MalformedData("thermal network: unknown resistance class '" + s + "'");
}

LossSource source_from_string(const std::string& s) {
    if (s == "Cu") return LossSource::Copper;
    if (s == "Fe") return LossSource::Iron;
    if (s == "br") return LossSource::Bearing;
    if (s == "wind") return LossSource::Windage;
    throw MalformedData("thermal network: unknown loss source '" + s + "'");
}

// Flattened solver-ready view of a scaled network.
struct CompiledNetwork {
    struct Edge {
        int a = 0;
        int b = 0;  // -1 for ambient
        double conductance = 0.0;
        bool convective = false;
        const ThermalResistance* source = nullptr;
    };
    std::vector<double> capacity;
    std::vector<Edge> edges;
    double ambient_c = 20.0;
};

CompiledNetwork compile(const ThermalNetwork& net, const ScalingFactors& k,
                        double relative_tip_speed) {
    CompiledNetwork c;
    c.ambient_c = net.ambient_c;
    c.capacity.reserve(net.nodes.size());
    for (const auto& node : net.nodes) {
        c.capacity.push_back(scaled_capacity(node.heat_capacity_j_k, k));
    }
    for (const auto& r : net.resistances) {
        CompiledNetwork::Edge e;
        e.a = net.node_index(r.from);
        e.b = net.node_index(r.to);
        if (e.a < 0) std::swap(e.a, e.b);  // keep the state node first
        e.convective = r.cls == ResistanceClass::ConvectionInternal ||
                       r.cls == ResistanceClass::ConvectionExternal;
        e.source = &r;
        const double res = scaled_resistance(r, k, relative_tip_speed);
        e.conductance = (std::isfinite(res) && res > 0.0) ? 1.0 / res : 0.0;
        c.edges.push_back(e);
    }
    return c;
}

void refresh_convection(CompiledNetwork& c, const ScalingFactors& k, double relative_tip_speed) {
    for (auto& e : c.edges) {
        if (!e.convective) continue;
        const double res = scaled_resistance(*e.source, k, relative_tip_speed);
        e.conductance = (std::isfinite(res) && res > 0.0) ? 1.0 / res : 0.0;
    }
}

// One forward-Euler advance of `dt`, split into sub-steps satisfying
// dt_sub <= 0.5 * min_i(C_i / sum_j G_ij).
void advance(const CompiledNetwork& net, std::vector<double>& temps,
             const std::vector<double>& injected_w, double dt, std::vector<double>& flow_scratch) {
    const std::size_t n = temps.size();
    std::vector<double> total_g(n, 0.0);
    for (const auto& e : net.edges) {
        total_g[std::size_t(e.a)] += e.conductance;
        if (e.b >= 0) total_g[std::size_t(e.b)] += e.conductance;
    }
    double dt_max = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        if (total_g[i] > 0.0) dt_max = std::min(dt_max, 0.5 * net.capacity[i] / total_g[i]);
    }
    const int substeps = std::isfinite(dt_max) ? std::max(1, int(std::ceil(dt / dt_max))) : 1;
    const double h = dt / substeps;

    for (int s = 0; s < substeps; ++s) {
        flow_scratch.assign(n, 0.0);
        for (const auto& e : net.edges) {
            const double ta = temps[std::size_t(e.a)];
            const double tb = e.b >= 0 ? temps[std::size_t(e.b)] : net.ambient_c;
            const double q = e.conductance * (tb - ta);
            flow_scratch[std::size_t(e.a)] += q;
            if (e.b >= 0) flow_scratch[std::size_t(e.b)] -= q;
        }
        for (std::size_t i = 0; i < n; ++i) {
            temps[i] += h * (flow_scratch[i] + injected_w[i]) / net.capacity[i];
            if (!std::isfinite(temps[i])) {
                throw NumericalDivergence("thermal node temperature became non-finite");
            }
        }
    }
}

}  // namespace

int ThermalNetwork::node_index(const std::string& name) const {
    if (name == kAmbientName) return -1;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].name == name) return int(i);
    }
    throw MalformedData("thermal network: unknown node '" + name + "'");
}

void ThermalNetwork::validate() const {
    if (nodes.empty()) throw MalformedData("thermal network: no nodes");
    for (const auto& n : nodes) {
        if (n.name == kAmbientName) {
            throw MalformedData("thermal network: ambient must not appear as a state node");
        }
        if (!(n.heat_capacity_j_k > 0.0)) {
            throw MalformedData("thermal network: node '" + n.name +
                                "' needs a positive heat capacity");
        }
        for (double w : n.injection) {
            if (!(w >= 0.0 && w <= 1.0)) {
                throw MalformedData("thermal network: node '" + n.name +
                                    "' has an injection weight outside [0, 1]");
            }
        }
    }
    for (int s = 0; s < kLossSourceCount; ++s) {
        double sum = 0.0;
        for (const auto& n : nodes) sum += n.injection[std::size_t(s)];
        if (std::abs(sum - 1.0) > 1e-9) {
            throw MalformedData("thermal network: " + to_string(LossSource(s)) +
                                " injection weights sum to " + std::to_string(sum) +
                                ", expected 1");
        }
    }
    // ambient reachability over the resistance graph
    std::vector<std::vector<int>> adjacency(nodes.size());
    std::vector<char> reaches_ambient(nodes.size(), 0);
    std::queue<int> frontier;
    for (const auto& r : resistances) {
        if (!(r.value_k_w > 0.0)) {
            throw MalformedData("thermal network: resistance " + r.from + "-" + r.to +
                                " must be positive");
        }
        const int a = node_index(r.from);
        const int b = node_index(r.to);
        if (a == b) throw MalformedData("thermal network: self-loop on '" + r.from + "'");
        if (a < 0 || b < 0) {
            const int state = a < 0 ? b : a;
            if (!reaches_ambient[std::size_t(state)]) {
                reaches_ambient[std::size_t(state)] = 1;
                frontier.push(state);
            }
        } else {
            adjacency[std::size_t(a)].push_back(b);
            adjacency[std::size_t(b)].push_back(a);
        }
    }
    while (!frontier.empty()) {
        const int i = frontier.front();
        frontier.pop();
        for (int j : adjacency[std::size_t(i)]) {
            if (!reaches_ambient[std::size_t(j)]) {
                reaches_ambient[std::size_t(j)] = 1;
                frontier.push(j);
            }
        }
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!reaches_ambient[i]) {
            throw MalformedData("thermal network: ambient unreachable from node '" +
                                nodes[i].name + "'");
        }
    }
    if (!(reference_speed_rad_s > 0.0)) {
        throw MalformedData("thermal network: reference_speed_rad_s must be positive");
    }
}

ThermalNetwork ThermalNetwork::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw MalformedData("thermal network file not readable: " + path.string());
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in, nullptr, true, true);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedData("thermal network file " + path.string() + ": " + e.what());
    }
    try {
        if (!doc.contains("schema_version") || doc.at("schema_version").get<int>() != 1) {
            throw MalformedData("thermal network file " + path.string() +
                                ": missing or unsupported schema_version");
        }
        ThermalNetwork net;
        net.ambient_c = doc.value("ambient_c", 20.0);
        net.initial_c = doc.value("initial_c", net.ambient_c);
        net.reference_speed_rad_s = doc.at("reference_speed_rad_s").get<double>();
        for (const auto& n : doc.at("nodes")) {
            ThermalNode node;
            node.name = n.at("name").get<std::string>();
            node.heat_capacity_j_k = n.at("heat_capacity_j_k").get<double>();
            if (n.contains("injection")) {
                for (const auto& [key, value] : n.at("injection").items()) {
                    node.injection[std::size_t(source_from_string(key))] = value.get<double>();
                }
            }
            net.nodes.push_back(std::move(node));
        }
        for (const auto& r : doc.at("resistances")) {
            ThermalResistance res;
            res.from = r.at("from").get<std::string>();
            res.to = r.at("to").get<std::string>();
            res.value_k_w = r.at("value_k_w").get<double>();
            res.cls = class_from_string(r.at("class").get<std::string>());
            if (r.contains("interface")) {
                const auto iface = r.at("interface").get<std::string>();
                if (iface == "cylindrical") {
                    res.interface = ContactInterface::Cylindrical;
                } else if (iface == "annular") {
                    res.interface = ContactInterface::Annular;
                } else {
                    throw MalformedData("thermal network: unknown contact interface '" + iface +
                                        "'");
                }
            }
            if (r.contains("area_scaling")) {
                const auto area = r.at("area_scaling").get<std::string>();
                if (area == "cylindrical") {
                    res.area = AreaScaling::Cylindrical;
                } else if (area == "radial_face") {
                    res.area = AreaScaling::RadialFace;
                } else {
                    throw MalformedData("thermal network: unknown area scaling '" + area + "'");
                }
            }
            res.speed_exponent = r.value("speed_exponent", 0.8);
            net.resistances.push_back(std::move(res));
        }
        net.validate();
        return net;
    } catch (const nlohmann::json::exception& e) {
        throw MalformedData("thermal network file " + path.string() + ": " + e.what());
    }
}

ThermalNetwork scale_network(const ThermalNetwork& net, const ScalingFactors& k,
                             double speed_rad_s) {
    const double relative_tip_speed = k.radial * speed_rad_s / net.reference_speed_rad_s;
    ThermalNetwork scaled = net;
    for (auto& node : scaled.nodes) {
        node.heat_capacity_j_k = scaled_capacity(node.heat_capacity_j_k, k);
    }
    for (auto& r : scaled.resistances) {
        r.value_k_w = scaled_resistance(r, k, relative_tip_speed);
    }
    return scaled;
}

std::vector<double> step(const ThermalNetwork& net, std::vector<double> temps_c,
                         const std::vector<double>& injected_w, double step_s) {
    if (temps_c.size() != net.nodes.size() || injected_w.size() != net.nodes.size()) {
        throw MalformedData("thermal step: state and injection sizes must match the node count");
    }
    // The network's resistance values are taken literally here; geometric
    // and speed effects belong to scale_network / simulate_cycle.
    CompiledNetwork compiled;
    compiled.ambient_c = net.ambient_c;
    for (const auto& node : net.nodes) compiled.capacity.push_back(node.heat_capacity_j_k);
    for (const auto& r : net.resistances) {
        CompiledNetwork::Edge e;
        e.a = net.node_index(r.from);
        e.b = net.node_index(r.to);
        if (e.a < 0) std::swap(e.a, e.b);
        e.conductance = 1.0 / r.value_k_w;
        e.source = &r;
        compiled.edges.push_back(e);
    }
    std::vector<double> scratch;
    advance(compiled, temps_c, injected_w, step_s, scratch);
    return temps_c;
}

double ThermalSimResult::peak_of(const std::string& node_name) const {
    for (std::size_t i = 0; i < node_names.size(); ++i) {
        if (node_names[i] == node_name) return peak_c[i];
    }
    throw MalformedData("thermal result: unknown node '" + node_name + "'");
}

ThermalSimResult simulate_cycle(const ThermalNetwork& referent, const ScalingFactors& k,
                                const LossTraces& losses, const std::vector<double>& speed_rad_s,
                                double step_s, bool record_traces) {
    const std::size_t samples = speed_rad_s.size();
    if (losses.copper_w.size() != samples || losses.iron_w.size() != samples ||
        losses.bearing_w.size() != samples || losses.windage_w.size() != samples) {
        throw MalformedData("thermal simulation: loss traces must match the speed trace length");
    }
    const std::size_t n = referent.nodes.size();
    auto compiled = compile(referent, k, k.radial);  // refreshed per sample below

    ThermalSimResult result;
    result.node_names.reserve(n);
    for (const auto& node : referent.nodes) result.node_names.push_back(node.name);
    std::vector<double> temps(n, referent.initial_c);
    result.peak_c = temps;
    if (record_traces) result.traces_c.assign(n, std::vector<double>{});

    std::vector<double> injected(n, 0.0);
    std::vector<double> scratch;
    for (std::size_t t = 0; t < samples; ++t) {
        const double rel_speed = k.radial * speed_rad_s[t] / referent.reference_speed_rad_s;
        refresh_convection(compiled, k, rel_speed);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& w = referent.nodes[i].injection;
            injected[i] = w[0] * losses.copper_w[t] + w[1] * losses.iron_w[t] +
                          w[2] * losses.bearing_w[t] + w[3] * losses.windage_w[t];
        }
        advance(compiled, temps, injected, step_s, scratch);
        for (std::size_t i = 0; i < n; ++i) {
            result.peak_c[i] = std::max(result.peak_c[i], temps[i]);
            if (record_traces) result.traces_c[i].push_back(temps[i]);
        }
    }
    return result;
}

std::string to_string(LossSource source) {
    switch (source) {
        case LossSource::Copper: return "Cu";
        case LossSource::Iron: return "Fe";
        case LossSource::Bearing: return "br";
        case LossSource::Windage: return "wind";
    }
    return "?";
}

}  // namespace evpt
