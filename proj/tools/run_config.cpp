#include "run_config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace chronosquid::cli {

namespace {

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = text.find_last_not_of(" \t\r");
    return text.substr(begin, end - begin + 1);
}

double parse_double(const std::string& value, const std::string& context) {
    std::size_t used = 0;
    double parsed = 0.0;
    try {
        parsed = std::stod(value, &used);
    } catch (const std::exception&) {
        throw std::runtime_error(context + ": expected a number, got '" +
                                 value + "'");
    }
    if (used != value.size()) {
        throw std::runtime_error(context + ": trailing characters in '" +
                                 value + "'");
    }
    return parsed;
}

long parse_long(const std::string& value, const std::string& context) {
    std::size_t used = 0;
    long parsed = 0;
    try {
        parsed = std::stol(value, &used);
    } catch (const std::exception&) {
        throw std::runtime_error(context + ": expected an integer, got '" +
                                 value + "'");
    }
    if (used != value.size()) {
        throw std::runtime_error(context + ": trailing characters in '" +
                                 value + "'");
    }
    return parsed;
}

std::size_t parse_count(const std::string& value, const std::string& context) {
    const long parsed = parse_long(value, context);
    if (parsed < 0) {
        throw std::runtime_error(context + ": must not be negative");
    }
    return static_cast<std::size_t>(parsed);
}

std::vector<TabulatedSample> load_samples(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open profile samples file: " + path);
    }
    std::vector<TabulatedSample> samples;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        for (char& c : line) {
            if (c == ',') c = ' ';
        }
        std::istringstream fields(line);
        double x = 0.0;
        double c = 0.0;
        if (!(fields >> x)) continue;  // blank line
        if (!(fields >> c)) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected 'position speed'");
        }
        samples.push_back(TabulatedSample{x, c});
    }
    return samples;
}

}  // namespace

void RunConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config file: " + path);
    }
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = path + ":" + std::to_string(lineno);
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw std::runtime_error(where + ": unterminated section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error(where + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string context = where + " (" + section + "." + key + ")";

        if (section == "squid") {
            if (key == "critical_current_a") {
                critical_current = parse_double(value, context);
            } else if (key == "cell_capacitance_f") {
                cell_capacitance = parse_double(value, context);
            } else if (key == "cell_length_m") {
                cell_length = parse_double(value, context);
            } else {
                throw std::runtime_error(context + ": unknown key");
            }
        } else if (section == "profile") {
            if (key == "kind") {
                profile_kind = value;
            } else if (key == "scale_a_m") {
                scale_a = parse_double(value, context);
            } else if (key == "constant_speed") {
                constant_speed = parse_double(value, context);
            } else if (key == "samples_path") {
                samples_path = value;
            } else {
                throw std::runtime_error(context + ": unknown key");
            }
        } else if (section == "design") {
            if (key == "window_min") {
                window_min = parse_double(value, context);
            } else if (key == "window_max") {
                window_max = parse_double(value, context);
            } else if (key == "cells") {
                cells = parse_count(value, context);
            } else if (key == "margin_delta") {
                margin_delta = parse_double(value, context);
            } else if (key == "branch_policy") {
                branch_policy = value;
            } else if (key == "safe_delta") {
                safe_delta = parse_double(value, context);
            } else {
                throw std::runtime_error(context + ": unknown key");
            }
        } else if (section == "lattice") {
            if (key == "padding_cells") {
                padding_cells = parse_count(value, context);
            } else if (key == "cfl_factor") {
                cfl_factor = parse_double(value, context);
            } else if (key == "boundary") {
                boundary = value;
            } else if (key == "cap_multiple") {
                cap_multiple = parse_double(value, context);
            } else if (key == "pulse_carrier_rad_s") {
                pulse_carrier = parse_double(value, context);
            } else if (key == "pulse_sigma_s") {
                pulse_sigma = parse_double(value, context);
            } else if (key == "pulse_amplitude_v") {
                pulse_amplitude = parse_double(value, context);
            } else if (key == "injection_cell") {
                injection_cell = parse_long(value, context);
            } else if (key == "probe_a") {
                probe_a = parse_long(value, context);
            } else if (key == "probe_b") {
                probe_b = parse_long(value, context);
            } else {
                throw std::runtime_error(context + ": unknown key");
            }
        } else if (section == "output") {
            if (key == "directory") {
                out_dir = value;
            } else {
                throw std::runtime_error(context + ": unknown key");
            }
        } else {
            throw std::runtime_error(where + ": unknown section [" + section +
                                     "]");
        }
    }
}

std::string RunConfig::resolve_out_dir(const std::string& flag_value) const {
    if (!flag_value.empty()) return flag_value;
    if (!out_dir.empty()) return out_dir;
    if (const char* env = std::getenv("CHRONO_SQUID_OUT")) {
        if (*env != '\0') return env;
    }
    return ".";
}

SquidParams make_params(const RunConfig& config) {
    SquidParams params;
    params.critical_current = config.critical_current;
    params.cell_capacitance = config.cell_capacitance;
    params.cell_length = config.cell_length;
    params.validate();
    return params;
}

SpeedProfile make_profile(const RunConfig& config) {
    if (config.profile_kind == "cubic") {
        return SpeedProfile::cubic(config.scale_a);
    }
    if (config.profile_kind == "constant") {
        const double speed = config.constant_speed;
        return SpeedProfile::analytic([speed](double) { return speed; });
    }
    if (config.profile_kind == "tabulated") {
        if (config.samples_path.empty()) {
            throw std::runtime_error(
                "profile.kind = tabulated needs profile.samples_path");
        }
        return SpeedProfile::tabulated(load_samples(config.samples_path));
    }
    throw std::runtime_error("unknown profile.kind '" + config.profile_kind +
                             "' (expected cubic, constant, or tabulated)");
}

BranchPolicy make_branch_policy(const RunConfig& config) {
    if (config.branch_policy == "auto") return BranchPolicy::Auto;
    if (config.branch_policy == "cos_positive") {
        return BranchPolicy::ForceCosPositive;
    }
    if (config.branch_policy == "cos_negative") {
        return BranchPolicy::ForceCosNegative;
    }
    throw std::runtime_error("unknown design.branch_policy '" +
                             config.branch_policy +
                             "' (expected auto, cos_positive, or cos_negative)");
}

Boundary make_boundary(const RunConfig& config) {
    if (config.boundary == "matched") return Boundary::MatchedTermination;
    if (config.boundary == "reflective") return Boundary::Reflective;
    throw std::runtime_error("unknown lattice.boundary '" + config.boundary +
                             "' (expected matched or reflective)");
}

std::string format_full(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

}  // namespace chronosquid::cli
