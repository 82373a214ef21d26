#pragma once

#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <string>

#include "evpt/drive_cycle.hpp"
#include "evpt/motor.hpp"

namespace evpt::test {

inline std::filesystem::path data_dir() { return std::filesystem::path(EVPT_DATA_DIR); }

// Unique temp file that cleans up after itself.
class TempFile {
public:
    explicit TempFile(const std::string& suffix) {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("evpt_test_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++) + suffix);
    }
    ~TempFile() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }
    void write(const std::string& text) const {
        std::ofstream out(path_);
        out << text;
    }

private:
    std::filesystem::path path_;
};

// Minimal synthetic referent for tests that need full control over the
// numbers; consistent enough to pass validate().
inline ReferentMotor synthetic_motor(double torque_nm = 300.0, double power_w = 105000.0,
                                     double base_speed = 350.0, double max_speed = 1600.0) {
    ReferentMotor m;
    m.name = "synthetic";
    m.tech = MotorTech::RFM;
    m.nominal_torque_nm = torque_nm;
    m.nominal_power_w = power_w;
    m.base_speed_rad_s = base_speed;
    m.max_speed_rad_s = max_speed;
    m.phase_inductance_h = 0.3e-3;
    m.flux_linkage_wb = 0.09;
    m.nominal_current_a = 250.0;
    m.geometry = WindingGeometry{2.0, 2.1e-8, 0.4, 12.0, 48.0, 4.0e-4, 0.45};
    m.phase_resistance_ohm = phase_resistance_geometric(m.geometry, ScalingFactors{1.0, 1.0});
    m.loss = LossCoefficients{0.9, 0.0009, 0.06, 3.0e-4, 1.2e-7};
    m.components = {MotorComponent{"core", 1.0e-3, 7650.0, 2.0}};
    return m;
}

inline std::shared_ptr<const ReferentMotor> shared_motor(const ReferentMotor& m) {
    return std::make_shared<const ReferentMotor>(m);
}

}  // namespace evpt::test
