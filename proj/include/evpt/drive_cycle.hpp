#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace evpt {

// Speed column selector for cycle CSV files.
enum class SpeedUnit { KilometersPerHour, MetersPerSecond };

// Time-indexed velocity trace with derived accelerations, the simulation
// mission. Immutable after construction; acceleration uses the forward
// difference a[i] = (v[i+1] - v[i]) / dt with a zero final sample, which
// makes sum(a[i] * dt) telescope exactly to v[N-1] - v[0].
class DriveCycle {
public:
    // Validates and differentiates the samples. Time must be strictly
    // increasing with a uniform step (1e-9 relative tolerance), speeds
    // non-negative, at least 2 samples. Throws MalformedCycle otherwise.
    static DriveCycle from_samples(std::vector<double> time_s,
                                   std::vector<double> speed_ms,
                                   std::string name);

    [[nodiscard]] const std::vector<double>& time_s() const noexcept { return time_s_; }
    [[nodiscard]] const std::vector<double>& speed_ms() const noexcept { return speed_ms_; }
    [[nodiscard]] const std::vector<double>& accel_ms2() const noexcept { return accel_ms2_; }
    [[nodiscard]] const std::string& name() const noexcept { return name_; }

    [[nodiscard]] std::size_t size() const noexcept { return time_s_.size(); }
    [[nodiscard]] double step_s() const noexcept { return step_s_; }
    [[nodiscard]] double duration_s() const noexcept { return time_s_.back() - time_s_.front(); }
    [[nodiscard]] double distance_m() const noexcept;
    [[nodiscard]] double max_speed_ms() const noexcept;

private:
    DriveCycle() = default;

    std::vector<double> time_s_;
    std::vector<double> speed_ms_;
    std::vector<double> accel_ms2_;
    std::string name_;
    double step_s_ = 0.0;
};

// Loads a cycle from CSV. Expects a header row with a `t_s` column and a
// `v_kmh` or `v_ms` column selected by `unit`; extra columns are ignored.
// Speeds are converted to m/s. Throws MalformedCycle on any violation.
[[nodiscard]] DriveCycle load_cycle(const std::filesystem::path& path, SpeedUnit unit);

// Writes `t_s` plus the speed column named by `unit`, shortest round-trip
// formatting, so that reloading reproduces the samples bit-exactly.
void save_cycle(const DriveCycle& cycle, const std::filesystem::path& path, SpeedUnit unit);

// Recomputes the forward-difference acceleration for externally built samples.
[[nodiscard]] std::vector<double> derive_acceleration(const std::vector<double>& speed_ms,
                                                      double step_s);

}  // namespace evpt
