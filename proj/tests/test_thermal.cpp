#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "evpt/errors.hpp"
#include "evpt/thermal.hpp"
#include "test_util.hpp"

using namespace evpt;

namespace {

ThermalNetwork single_node(double capacity, double resistance, double ambient) {
    ThermalNetwork net;
    net.ambient_c = ambient;
    net.initial_c = ambient;
    net.reference_speed_rad_s = 100.0;
    net.nodes.push_back(ThermalNode{"mass", capacity, {1.0, 1.0, 1.0, 1.0}});
    net.resistances.push_back(
        ThermalResistance{"mass", "ambient", resistance, ResistanceClass::Contact});
    return net;
}

// Three-node chain to ambient with distinct capacities and resistances.
ThermalNetwork chain_network() {
    ThermalNetwork net;
    net.ambient_c = 20.0;
    net.initial_c = 20.0;
    net.reference_speed_rad_s = 100.0;
    net.nodes.push_back(ThermalNode{"a", 20.0, {1.0, 0.0, 0.0, 0.0}});
    net.nodes.push_back(ThermalNode{"b", 35.0, {0.0, 1.0, 0.0, 0.0}});
    net.nodes.push_back(ThermalNode{"c", 15.0, {0.0, 0.0, 1.0, 1.0}});
    net.resistances.push_back(ThermalResistance{"a", "b", 0.8, ResistanceClass::Contact});
    net.resistances.push_back(ThermalResistance{"b", "c", 0.5, ResistanceClass::Contact});
    net.resistances.push_back(ThermalResistance{"c", "ambient", 1.2, ResistanceClass::Contact});
    return net;
}

// Direct steady-state solve of the conductance system G T = Q + g_amb T_amb.
std::vector<double> steady_state(const ThermalNetwork& net, const std::vector<double>& q) {
    const std::size_t n = net.nodes.size();
    std::vector<std::vector<double>> matrix(n, std::vector<double>(n + 1, 0.0));
    for (std::size_t i = 0; i < n; ++i) matrix[i][n] = q[i];
    for (const auto& r : net.resistances) {
        const int a = net.node_index(r.from);
        const int b = net.node_index(r.to);
        const double g = 1.0 / r.value_k_w;
        if (a >= 0 && b >= 0) {
            matrix[std::size_t(a)][std::size_t(a)] += g;
            matrix[std::size_t(b)][std::size_t(b)] += g;
            matrix[std::size_t(a)][std::size_t(b)] -= g;
            matrix[std::size_t(b)][std::size_t(a)] -= g;
        } else {
            const std::size_t s = std::size_t(a >= 0 ? a : b);
            matrix[s][s] += g;
            matrix[s][n] += g * net.ambient_c;
        }
    }
    for (std::size_t col = 0; col < n; ++col) {  // Gaussian elimination, partial pivot
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row) {
            if (std::abs(matrix[row][col]) > std::abs(matrix[pivot][col])) pivot = row;
        }
        std::swap(matrix[col], matrix[pivot]);
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col) continue;
            const double factor = matrix[row][col] / matrix[col][col];
            for (std::size_t k = col; k <= n; ++k) matrix[row][k] -= factor * matrix[col][k];
        }
    }
    std::vector<double> solution(n);
    for (std::size_t i = 0; i < n; ++i) solution[i] = matrix[i][n] / matrix[i][i];
    return solution;
}

}  // namespace

TEST_CASE("bundled thermal network loads and validates") {
    const ThermalNetwork net =
        ThermalNetwork::load(evpt::test::data_dir() / "thermal/afm_lptn.json");
    CHECK(net.nodes.size() == 9);
    CHECK(net.node_index("winding") >= 0);
    CHECK(net.node_index("ambient") == -1);
}

TEST_CASE("network validation rejects broken data") {
    SUBCASE("injection weights must sum to one per source") {
        ThermalNetwork net = single_node(100.0, 2.0, 20.0);
        net.nodes[0].injection = {0.5, 1.0, 1.0, 1.0};
        CHECK_THROWS_AS(net.validate(), MalformedData);
    }
    SUBCASE("ambient must be reachable") {
        ThermalNetwork net = single_node(100.0, 2.0, 20.0);
        net.nodes.push_back(ThermalNode{"orphan", 10.0, {0.0, 0.0, 0.0, 0.0}});
        CHECK_THROWS_AS(net.validate(), MalformedData);
    }
    SUBCASE("unknown node name in a resistance") {
        ThermalNetwork net = single_node(100.0, 2.0, 20.0);
        net.resistances.push_back(
            ThermalResistance{"mass", "ghost", 1.0, ResistanceClass::Contact});
        CHECK_THROWS_AS(net.validate(), MalformedData);
    }
    SUBCASE("valid single node passes") {
        CHECK_NOTHROW(single_node(100.0, 2.0, 20.0).validate());
    }
}

TEST_CASE("geometric scaling of capacities and resistances") {
    ThermalNetwork net;
    net.ambient_c = 20.0;
    net.reference_speed_rad_s = 100.0;
    net.nodes.push_back(ThermalNode{"n", 100.0, {1.0, 1.0, 1.0, 1.0}});
    net.resistances = {
        ThermalResistance{"n", "ambient", 1.0, ResistanceClass::AxialConduction},
        ThermalResistance{"n", "ambient", 1.0, ResistanceClass::RadialConduction},
        ThermalResistance{"n", "ambient", 1.0, ResistanceClass::Contact,
                          ContactInterface::Annular},
        ThermalResistance{"n", "ambient", 1.0, ResistanceClass::Contact,
                          ContactInterface::Cylindrical},
        ThermalResistance{"n", "ambient", 1.0, ResistanceClass::ConvectionInternal,
                          ContactInterface::Annular, AreaScaling::RadialFace, 0.8},
        ThermalResistance{"n", "ambient", 1.0, ResistanceClass::ConvectionExternal,
                          ContactInterface::Annular, AreaScaling::Cylindrical, 0.0},
    };

    SUBCASE("identity at the reference speed changes nothing") {
        const ThermalNetwork scaled = scale_network(net, ScalingFactors{1.0, 1.0}, 100.0);
        CHECK(scaled.nodes[0].heat_capacity_j_k == net.nodes[0].heat_capacity_j_k);
        for (std::size_t i = 0; i < net.resistances.size(); ++i) {
            CHECK(scaled.resistances[i].value_k_w == net.resistances[i].value_k_w);
        }
    }
    SUBCASE("class rules") {
        const ScalingFactors k{1.3, 2.0};
        const ThermalNetwork scaled = scale_network(net, k, 100.0);
        CHECK(scaled.nodes[0].heat_capacity_j_k ==
              doctest::Approx(100.0 * 1.69 * 2.0).epsilon(1e-12));
        CHECK(scaled.resistances[0].value_k_w ==
              doctest::Approx(2.0 / 1.69).epsilon(1e-12));  // axial: K_A / K_R^2
        CHECK(scaled.resistances[1].value_k_w == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(scaled.resistances[2].value_k_w ==
              doctest::Approx(1.0 / 1.69).epsilon(1e-12));  // annular contact: 1 / K_R^2
        CHECK(scaled.resistances[3].value_k_w ==
              doctest::Approx(1.0 / 2.6).epsilon(1e-12));   // cylindrical: 1 / (K_R K_A)
        const double tip = 1.3;  // radial factor at the reference speed
        CHECK(scaled.resistances[4].value_k_w ==
              doctest::Approx(1.0 / (1.69 * std::pow(tip, 0.8))).epsilon(1e-12));
        CHECK(scaled.resistances[5].value_k_w ==
              doctest::Approx(1.0 / 2.6).epsilon(1e-12));   // speed exponent 0
    }
    SUBCASE("axial conduction doubles with the axial factor") {
        const ThermalNetwork scaled = scale_network(net, ScalingFactors{1.0, 2.0}, 100.0);
        CHECK(scaled.resistances[0].value_k_w == doctest::Approx(2.0).epsilon(1e-12));
    }
}

TEST_CASE("single-node step response matches the closed form") {
    const double capacity = 100.0;
    const double resistance = 2.0;
    const double ambient = 20.0;
    const double q = 10.0;
    const double tau = capacity * resistance;  // 200 s
    const ThermalNetwork net = single_node(capacity, resistance, ambient);

    std::vector<double> temps{ambient};
    const double h = 0.05;
    double t = 0.0;
    const auto check_point = [&](double expected_rise) {
        const double rise = temps[0] - ambient;
        CHECK(rise == doctest::Approx(expected_rise).epsilon(1e-3));
    };
    while (t < 5.0 * tau - 1e-9) {
        temps = step(net, temps, {q}, h);
        t += h;
        if (std::abs(t - tau) < h / 2.0) {
            check_point(q * resistance * (1.0 - std::exp(-1.0)));
            CHECK(temps[0] == doctest::Approx(32.6424).epsilon(1e-4));
        }
    }
    check_point(q * resistance * (1.0 - std::exp(-5.0)));
    CHECK(temps[0] == doctest::Approx(39.8652).epsilon(1e-4));
}

TEST_CASE("equilibrium is a fixed point") {
    const ThermalNetwork net = chain_network();
    std::vector<double> temps(3, net.ambient_c);
    temps = step(net, temps, {0.0, 0.0, 0.0}, 1.0);
    for (double v : temps) CHECK(v == doctest::Approx(net.ambient_c).epsilon(1e-15));
}

TEST_CASE("long-horizon simulation reaches the algebraic steady state") {
    const ThermalNetwork net = chain_network();
    const std::vector<double> q{50.0, 30.0, 20.0};
    const std::vector<double> expected = steady_state(net, q);
    std::vector<double> temps(3, net.ambient_c);
    for (int i = 0; i < 4000; ++i) temps = step(net, temps, q, 5.0);
    for (std::size_t i = 0; i < temps.size(); ++i) {
        CHECK(std::abs(temps[i] - expected[i]) < 0.1);
    }
}

TEST_CASE("discrete energy balance over an interval") {
    const ThermalNetwork net = chain_network();
    const std::vector<double> q{40.0, 0.0, 10.0};
    std::vector<double> temps(3, net.ambient_c);

    // keep each call to a single internal sub-step so the pre-step ambient
    // flux is the integrator's own accounting
    double min_bound = 1e300;
    const double g_ab = 1.0 / 0.8;
    const double g_bc = 1.0 / 0.5;
    const double g_ca = 1.0 / 1.2;
    min_bound = std::min(20.0 / g_ab, std::min(35.0 / (g_ab + g_bc), 15.0 / (g_bc + g_ca)));
    const double h = 0.4 * min_bound;

    double stored = 0.0;
    double injected_minus_rejected = 0.0;
    for (int i = 0; i < 5000; ++i) {
        const double ambient_flux = g_ca * (temps[2] - net.ambient_c);
        const auto next = step(net, temps, q, h);
        stored += 20.0 * (next[0] - temps[0]) + 35.0 * (next[1] - temps[1]) +
                  15.0 * (next[2] - temps[2]);
        injected_minus_rejected += h * (q[0] + q[1] + q[2] - ambient_flux);
        temps = next;
    }
    CHECK(stored == doctest::Approx(injected_minus_rejected).epsilon(0.005));
}

TEST_CASE("temperatures stay above ambient for non-negative injection") {
    const ThermalNetwork net = chain_network();
    std::mt19937_64 rng(21);
    std::vector<double> temps(3, net.ambient_c);
    for (int i = 0; i < 500; ++i) {
        const std::vector<double> q{double(rng() % 100), double(rng() % 50),
                                    double(rng() % 25)};
        temps = step(net, temps, q, 1.0);
        for (double v : temps) CHECK(v >= net.ambient_c - 1e-9);
    }
}

TEST_CASE("isolated pair conserves stored heat") {
    ThermalNetwork net;
    net.ambient_c = 20.0;
    net.reference_speed_rad_s = 100.0;
    net.nodes.push_back(ThermalNode{"x", 50.0, {1.0, 1.0, 1.0, 1.0}});
    net.nodes.push_back(ThermalNode{"y", 50.0, {0.0, 0.0, 0.0, 0.0}});
    net.resistances.push_back(ThermalResistance{"x", "y", 0.7, ResistanceClass::Contact});
    std::vector<double> temps{80.0, 20.0};
    const double mean = 50.0;
    for (int i = 0; i < 200; ++i) {
        temps = step(net, temps, {0.0, 0.0}, 2.0);
        CHECK(0.5 * (temps[0] + temps[1]) == doctest::Approx(mean).epsilon(1e-12));
    }
    CHECK(temps[0] == doctest::Approx(mean).epsilon(1e-3));  // pair equilibrates
}

TEST_CASE("cycle simulation") {
    const ThermalNetwork net = chain_network();
    const std::size_t samples = 400;
    const std::vector<double> speed(samples, 100.0);

    SUBCASE("zero losses keep the initial temperature") {
        LossTraces losses;
        losses.copper_w.assign(samples, 0.0);
        losses.iron_w.assign(samples, 0.0);
        losses.bearing_w.assign(samples, 0.0);
        losses.windage_w.assign(samples, 0.0);
        const ThermalSimResult result =
            simulate_cycle(net, ScalingFactors{1.0, 1.0}, losses, speed, 1.0);
        for (double peak : result.peak_c) CHECK(peak == doctest::Approx(net.initial_c));
    }
    SUBCASE("temperature rise is linear in the injected losses") {
        LossTraces losses;
        losses.copper_w.assign(samples, 60.0);
        losses.iron_w.assign(samples, 25.0);
        losses.bearing_w.assign(samples, 10.0);
        losses.windage_w.assign(samples, 5.0);
        LossTraces doubled = losses;
        for (auto* trace : {&doubled.copper_w, &doubled.iron_w, &doubled.bearing_w,
                            &doubled.windage_w}) {
            for (double& v : *trace) v *= 2.0;
        }
        const auto base = simulate_cycle(net, ScalingFactors{1.1, 0.9}, losses, speed, 1.0);
        const auto twice = simulate_cycle(net, ScalingFactors{1.1, 0.9}, doubled, speed, 1.0);
        for (std::size_t i = 0; i < base.peak_c.size(); ++i) {
            const double rise = base.peak_c[i] - net.initial_c;
            const double rise2 = twice.peak_c[i] - net.initial_c;
            CHECK(rise2 == doctest::Approx(2.0 * rise).epsilon(1e-9));
        }
    }
    SUBCASE("traces are recorded on request and peaks match them") {
        LossTraces losses;
        losses.copper_w.assign(samples, 100.0);
        losses.iron_w.assign(samples, 0.0);
        losses.bearing_w.assign(samples, 0.0);
        losses.windage_w.assign(samples, 0.0);
        const auto result =
            simulate_cycle(net, ScalingFactors{1.0, 1.0}, losses, speed, 1.0, true);
        REQUIRE(result.traces_c.size() == 3);
        for (std::size_t n = 0; n < 3; ++n) {
            double peak = net.initial_c;
            for (double v : result.traces_c[n]) peak = std::max(peak, v);
            CHECK(peak == doctest::Approx(result.peak_c[n]));
        }
        CHECK(result.peak_of("a") == result.peak_c[0]);
        CHECK_THROWS_AS((void)result.peak_of("ghost"), MalformedData);
    }
}

TEST_CASE("non-finite temperatures raise NumericalDivergence") {
    const ThermalNetwork net = single_node(1e-3, 2.0, 20.0);
    std::vector<double> temps{20.0};
    CHECK_THROWS_AS((void)step(net, temps, {1e308}, 10.0), NumericalDivergence);
}
