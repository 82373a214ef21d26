#include "evpt/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "evpt/errors.hpp"

namespace evpt {

namespace {

constexpr double kObjectiveGuard = 1e30;  // stands in for failed evaluations
constexpr double kUnreachableViolation = 10.0;

double distance(const std::vector<double>& a, const std::vector<double>& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::span<const double> x0,
                             const NelderMeadOptions& options) {
    const std::size_t n = x0.size();
    if (n == 0) throw InvalidStart("empty start point");
    for (double v : x0) {
        if (!std::isfinite(v)) throw InvalidStart("start point has non-finite coordinates");
    }

    int evaluations = 0;
    const auto eval = [&](const std::vector<double>& x) {
        ++evaluations;
        return f(std::span<const double>(x));
    };

    std::vector<std::vector<double>> simplex;
    std::vector<double> values;
    simplex.emplace_back(x0.begin(), x0.end());
    values.push_back(eval(simplex[0]));
    if (!std::isfinite(values[0])) throw InvalidStart("objective not finite at the start point");
    for (std::size_t i = 0; i < n; ++i) {
        auto vertex = simplex[0];
        vertex[i] += vertex[i] != 0.0 ? options.initial_step * std::abs(vertex[i])
                                      : options.initial_step;
        simplex.push_back(vertex);
        values.push_back(eval(vertex));
    }

    std::vector<std::size_t> order(n + 1);
    NelderMeadResult result;
    const double alpha = 1.0;  // reflection
    const double chi = 2.0;    // expansion
    const double psi = 0.5;    // contraction
    const double sigma = 0.5;  // shrink

    while (true) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

        const std::size_t best = order[0];
        const std::size_t second_worst = order[n - 1];
        const std::size_t worst = order[n];
        result.history.push_back(values[best]);

        double diameter = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            diameter = std::max(diameter, distance(simplex[order[i]], simplex[best]));
        }
        const double spread = values[worst] - values[best];
        if (diameter < options.simplex_tolerance || spread < options.objective_tolerance) {
            result.converged = true;
            break;
        }
        if (evaluations >= options.max_evaluations) break;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t d = 0; d < n; ++d) centroid[d] += simplex[i][d];
        }
        for (double& c : centroid) c /= double(n);

        std::vector<double> reflected(n);
        for (std::size_t d = 0; d < n; ++d) {
            reflected[d] = centroid[d] + alpha * (centroid[d] - simplex[worst][d]);
        }
        const double f_reflected = eval(reflected);

        if (f_reflected < values[best]) {
            std::vector<double> expanded(n);
            for (std::size_t d = 0; d < n; ++d) {
                expanded[d] = centroid[d] + chi * (reflected[d] - centroid[d]);
            }
            const double f_expanded = eval(expanded);
            if (f_expanded < f_reflected) {
                simplex[worst] = std::move(expanded);
                values[worst] = f_expanded;
            } else {
                simplex[worst] = std::move(reflected);
                values[worst] = f_reflected;
            }
        } else if (f_reflected < values[second_worst]) {
            simplex[worst] = std::move(reflected);
            values[worst] = f_reflected;
        } else if (f_reflected < values[worst]) {
            std::vector<double> contracted(n);  // outside
            for (std::size_t d = 0; d < n; ++d) {
                contracted[d] = centroid[d] + psi * (reflected[d] - centroid[d]);
            }
            const double f_contracted = eval(contracted);
            if (f_contracted <= f_reflected) {
                simplex[worst] = std::move(contracted);
                values[worst] = f_contracted;
            } else {
                for (std::size_t i = 0; i <= n; ++i) {  // shrink
                    if (i == best) continue;
                    for (std::size_t d = 0; d < n; ++d) {
                        simplex[i][d] = simplex[best][d] + sigma * (simplex[i][d] - simplex[best][d]);
                    }
                    values[i] = eval(simplex[i]);
                }
            }
        } else {
            std::vector<double> contracted(n);  // inside
            for (std::size_t d = 0; d < n; ++d) {
                contracted[d] = centroid[d] - psi * (centroid[d] - simplex[worst][d]);
            }
            const double f_contracted = eval(contracted);
            if (f_contracted < values[worst]) {
                simplex[worst] = std::move(contracted);
                values[worst] = f_contracted;
            } else {
                for (std::size_t i = 0; i <= n; ++i) {  // shrink
                    if (i == best) continue;
                    for (std::size_t d = 0; d < n; ++d) {
                        simplex[i][d] = simplex[best][d] + sigma * (simplex[i][d] - simplex[best][d]);
                    }
                    values[i] = eval(simplex[i]);
                }
            }
        }
        ++result.iterations;
    }

    const std::size_t winner =
        std::size_t(std::min_element(values.begin(), values.end()) - values.begin());
    result.x = simplex[winner];
    result.value = values[winner];
    result.evaluations = evaluations;
    return result;
}

namespace {

// Active decision variables of a topology and their box.
struct VariableLayout {
    bool has_gear = false;
    bool has_split = false;
    std::vector<double> lower;
    std::vector<double> upper;

    [[nodiscard]] std::size_t dimension() const noexcept { return lower.size(); }

    [[nodiscard]] DesignPoint unpack(std::span<const double> x) const {
        DesignPoint p;
        p.axial = x[0];
        p.radial = x[1];
        std::size_t i = 2;
        if (has_gear) p.gear_ratio = x[i++];
        if (has_split) p.front_split = x[i++];
        return p;
    }

    [[nodiscard]] std::vector<double> pack(const DesignPoint& p) const {
        std::vector<double> x{p.axial, p.radial};
        if (has_gear) x.push_back(p.gear_ratio);
        if (has_split) x.push_back(p.front_split);
        return x;
    }

    void project(std::vector<double>& x) const {
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lower[i], upper[i]);
    }
};

VariableLayout make_layout(TopologyKind kind, const OptimizerOptions& options) {
    VariableLayout layout;
    layout.lower = {options.bounds.scale_min, options.bounds.scale_min};
    layout.upper = {options.bounds.scale_max, options.bounds.scale_max};
    if (kind != TopologyKind::AWD_AFM) {
        layout.has_gear = true;
        layout.lower.push_back(options.bounds.gear_min);
        layout.upper.push_back(options.bounds.gear_max);
    }
    if (kind != TopologyKind::RWD_RFM && options.optimize_split) {
        layout.has_split = true;
        layout.lower.push_back(0.0);
        layout.upper.push_back(1.0);
    }
    return layout;
}

// Relative violation magnitudes of one evaluation; all non-negative.
struct Violations {
    double top_speed = 0.0;
    double accel = 0.0;
    double thermal = 0.0;
    double envelope = 0.0;

    [[nodiscard]] double max() const noexcept {
        return std::max({top_speed, accel, thermal, envelope});
    }
    [[nodiscard]] double squared_sum() const noexcept {
        return top_speed * top_speed + accel * accel + thermal * thermal + envelope * envelope;
    }
};

// Relative violations of the slacks against requirements tightened by
// `margin`; the search uses a small positive margin so optima land strictly
// inside the true feasible set, reporting always uses margin 0.
Violations violations_of(const ConstraintSlacks& slacks, const PerformanceSpec& perf,
                         double thermal_limit_c, double margin) {
    Violations v;
    v.top_speed = std::max(0.0, margin - slacks.top_speed_kmh / perf.top_speed_kmh);
    if (std::isinf(slacks.accel_s)) {
        v.accel = kUnreachableViolation;
    } else {
        v.accel = std::max(0.0, margin - slacks.accel_s / perf.accel_time_s);
    }
    if (thermal_limit_c > 0.0) {
        v.thermal = std::max(0.0, margin - slacks.winding_temp_c / thermal_limit_c);
    }
    v.envelope = std::max(0.0, -slacks.envelope);
    return v;
}

}  // namespace

DesignEvaluation evaluate_design(
    const DesignPoint& p, TopologyKind kind, const Mission& mission,
    const std::map<MotorTech, std::shared_ptr<const ReferentMotor>>& referents,
    const OptimizerOptions& options) {
    const PowertrainConfig config = instantiate(kind, p, referents, mission.topology_options);

    SimulationOptions sim_options;
    sim_options.rb_in_traction = mission.rb_in_traction;
    const CycleEvaluation cycle_eval =
        evaluate_cycle(config, *mission.cycle, *mission.vehicle, sim_options);

    DesignEvaluation out;
    out.energy_kwh = cycle_eval.energy_kwh;
    out.slacks.envelope = -cycle_eval.envelope_violation;

    const double top = top_speed_kmh(config, *mission.vehicle);
    const double accel =
        accel_time_s(config, *mission.vehicle, mission.performance.accel_target_kmh);
    out.slacks.top_speed_kmh = top - mission.performance.top_speed_kmh;
    out.slacks.accel_s = mission.performance.accel_time_s - accel;

    if (mission.thermal != nullptr) {
        const ThermalOutcome thermal = simulate_thermal(
            config, cycle_eval, *mission.thermal, options.thermal_node, mission.cycle->step_s());
        out.slacks.winding_temp_c = options.thermal_limit_c - thermal.peak_c;
    } else {
        out.slacks.winding_temp_c = options.thermal_limit_c;
    }

    const Violations v = violations_of(out.slacks, mission.performance,
                                       mission.thermal ? options.thermal_limit_c : 0.0,
                                       /*margin=*/0.0);
    out.max_violation = v.max();
    out.feasible = out.max_violation <= options.feasibility_tolerance;
    return out;
}

OptimizationResult optimize_powertrain(
    TopologyKind kind, const Mission& mission,
    const std::map<MotorTech, std::shared_ptr<const ReferentMotor>>& referents,
    const OptimizerOptions& options) {
    const VariableLayout layout = make_layout(kind, options);
    const std::size_t dim = layout.dimension();

    const auto evaluate_point = [&](const DesignPoint& p) {
        return evaluate_design(p, kind, mission, referents, options);
    };

    // Energy scale for the penalty weights, taken at the referent design.
    DesignPoint reference;
    reference.gear_ratio = layout.has_gear
                               ? std::clamp(8.0, options.bounds.gear_min, options.bounds.gear_max)
                               : 1.0;
    double energy_scale = 1.0;
    try {
        energy_scale = std::max(std::abs(evaluate_point(reference).energy_kwh), 1e-3);
    } catch (const Error&) {
        energy_scale = 1.0;
    }
    const double weight = options.penalty_scale * energy_scale;

    const auto penalized = [&](std::span<const double> x) -> double {
        std::vector<double> projected(x.begin(), x.end());
        layout.project(projected);
        try {
            const DesignPoint p = layout.unpack(projected);
            const DesignEvaluation eval = evaluate_point(p);
            const Violations v = violations_of(eval.slacks, mission.performance,
                                               mission.thermal ? options.thermal_limit_c : 0.0,
                                               options.constraint_margin);
            return eval.energy_kwh + weight * v.squared_sum();
        } catch (const Error&) {
            return kObjectiveGuard;
        }
    };

    // Latin-hypercube start points; the generator avoids std::shuffle and
    // the distribution classes so identical seeds reproduce bit-identical
    // runs on any standard library.
    std::mt19937_64 rng(options.seed);
    const auto next_unit = [&rng]() { return double(rng() >> 11) * 0x1.0p-53; };
    const int starts = std::max(1, options.starts);
    std::vector<std::vector<double>> start_points(std::size_t(starts),
                                                  std::vector<double>(dim, 0.0));
    for (std::size_t d = 0; d < dim; ++d) {
        std::vector<int> slots(static_cast<std::size_t>(starts));
        std::iota(slots.begin(), slots.end(), 0);
        for (std::size_t i = slots.size() - 1; i > 0; --i) {
            const std::size_t j = std::size_t(rng() % (i + 1));
            std::swap(slots[i], slots[j]);
        }
        for (int s = 0; s < starts; ++s) {
            const double fraction = (slots[std::size_t(s)] + next_unit()) / starts;
            start_points[std::size_t(s)][d] =
                layout.lower[d] + fraction * (layout.upper[d] - layout.lower[d]);
        }
    }

    OptimizationResult result;
    bool have_any = false;
    bool best_is_feasible = false;
    double best_penalized = 0.0;
    double best_violation = 0.0;

    for (const auto& start : start_points) {
        NelderMeadResult nm = nelder_mead(penalized, start, options.nelder_mead);
        result.evaluations += nm.evaluations;

        layout.project(nm.x);
        const DesignPoint candidate = layout.unpack(nm.x);
        DesignEvaluation eval;
        try {
            eval = evaluate_point(candidate);
        } catch (const Error&) {
            continue;
        }
        const bool better = [&] {
            if (!have_any) return true;
            if (eval.feasible != best_is_feasible) return eval.feasible;
            if (eval.feasible) return nm.value < best_penalized;
            return eval.max_violation < best_violation;
        }();
        if (better) {
            have_any = true;
            best_is_feasible = eval.feasible;
            best_penalized = nm.value;
            best_violation = eval.max_violation;
            result.best = candidate;
            result.energy_kwh = eval.energy_kwh;
            result.slacks = eval.slacks;
            result.feasible = eval.feasible;
            result.converged = eval.feasible && nm.converged;
            result.history = std::move(nm.history);
        }
    }
    return result;
}

}  // namespace evpt
