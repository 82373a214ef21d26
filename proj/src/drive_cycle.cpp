#include "evpt/drive_cycle.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "evpt/errors.hpp"

namespace evpt {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
        while (!field.empty() && field.front() == ' ') field.erase(field.begin());
        fields.push_back(field);
    }
    return fields;
}

double parse_double(const std::string& text, std::size_t line_no) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw MalformedCycle("cycle line " + std::to_string(line_no) + ": cannot parse number '" +
                             text + "'");
    }
    return value;
}

void format_double(std::string& out, double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    out.append(buf, ptr);
}

}  // namespace

std::vector<double> derive_acceleration(const std::vector<double>& speed_ms, double step_s) {
    std::vector<double> accel(speed_ms.size(), 0.0);
    for (std::size_t i = 0; i + 1 < speed_ms.size(); ++i) {
        accel[i] = (speed_ms[i + 1] - speed_ms[i]) / step_s;
    }
    return accel;
}

DriveCycle DriveCycle::from_samples(std::vector<double> time_s, std::vector<double> speed_ms,
                                    std::string name) {
    if (time_s.size() != speed_ms.size()) {
        throw MalformedCycle("cycle '" + name + "': time and speed lengths differ");
    }
    if (time_s.size() < 2) {
        throw MalformedCycle("cycle '" + name + "': fewer than 2 samples");
    }
    const double step = time_s[1] - time_s[0];
    if (!(step > 0.0)) {
        throw MalformedCycle("cycle '" + name + "': time not strictly increasing");
    }
    for (std::size_t i = 1; i < time_s.size(); ++i) {
        const double dt = time_s[i] - time_s[i - 1];
        if (!(dt > 0.0)) {
            throw MalformedCycle("cycle '" + name + "': time not strictly increasing at sample " +
                                 std::to_string(i));
        }
        if (std::abs(dt - step) > 1e-9 * std::max(std::abs(step), 1.0)) {
            throw MalformedCycle("cycle '" + name + "': non-uniform time step at sample " +
                                 std::to_string(i));
        }
    }
    for (std::size_t i = 0; i < speed_ms.size(); ++i) {
        if (!(speed_ms[i] >= 0.0) || !std::isfinite(speed_ms[i])) {
            throw MalformedCycle("cycle '" + name + "': negative or non-finite speed at sample " +
                                 std::to_string(i));
        }
    }

    DriveCycle cycle;
    cycle.step_s_ = step;
    cycle.accel_ms2_ = derive_acceleration(speed_ms, step);
    cycle.time_s_ = std::move(time_s);
    cycle.speed_ms_ = std::move(speed_ms);
    cycle.name_ = std::move(name);
    return cycle;
}

double DriveCycle::distance_m() const noexcept {
    double d = 0.0;
    for (std::size_t i = 0; i + 1 < speed_ms_.size(); ++i) d += speed_ms_[i] * step_s_;
    return d;
}

double DriveCycle::max_speed_ms() const noexcept {
    return *std::max_element(speed_ms_.begin(), speed_ms_.end());
}

DriveCycle load_cycle(const std::filesystem::path& path, SpeedUnit unit) {
    std::ifstream in(path);
    if (!in) {
        throw MalformedCycle("cycle file not readable: " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw MalformedCycle("cycle file empty: " + path.string());
    }
    const std::string speed_column = unit == SpeedUnit::KilometersPerHour ? "v_kmh" : "v_ms";
    const auto header = split_csv_line(line);
    std::ptrdiff_t t_col = -1;
    std::ptrdiff_t v_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "t_s") t_col = static_cast<std::ptrdiff_t>(i);
        if (header[i] == speed_column) v_col = static_cast<std::ptrdiff_t>(i);
    }
    if (t_col < 0 || v_col < 0) {
        throw MalformedCycle("cycle file " + path.string() + ": header must contain t_s and " +
                             speed_column);
    }

    std::vector<double> time_s;
    std::vector<double> speed_ms;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        if (fields.size() <= std::size_t(std::max(t_col, v_col))) {
            throw MalformedCycle("cycle line " + std::to_string(line_no) + ": too few columns");
        }
        time_s.push_back(parse_double(fields[std::size_t(t_col)], line_no));
        double v = parse_double(fields[std::size_t(v_col)], line_no);
        if (unit == SpeedUnit::KilometersPerHour) v /= 3.6;
        speed_ms.push_back(v);
    }
    return DriveCycle::from_samples(std::move(time_s), std::move(speed_ms),
                                    path.stem().string());
}

void save_cycle(const DriveCycle& cycle, const std::filesystem::path& path, SpeedUnit unit) {
    std::ofstream out(path);
    if (!out) {
        throw MalformedCycle("cannot write cycle file: " + path.string());
    }
    std::string buffer;
    buffer += unit == SpeedUnit::KilometersPerHour ? "t_s,v_kmh\n" : "t_s,v_ms\n";
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        format_double(buffer, cycle.time_s()[i]);
        buffer += ',';
        const double v = cycle.speed_ms()[i];
        format_double(buffer, unit == SpeedUnit::KilometersPerHour ? v * 3.6 : v);
        buffer += '\n';
    }
    out << buffer;
}

}  // namespace evpt
