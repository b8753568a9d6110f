#pragma once

#include <cstddef>
#include <string>

#include "chronosquid/array_design.hpp"
#include "chronosquid/lattice.hpp"
#include "chronosquid/spacetime.hpp"
#include "chronosquid/squid.hpp"

namespace chronosquid::cli {

/// Everything a run needs, collected from built-in defaults, an optional
/// config file, and command-line overrides (in that order of precedence).
/// Keys and units are documented in the README.
struct RunConfig {
    // [squid]
    double critical_current = 1.25e-6;  // amperes
    double cell_capacitance = 90e-15;   // farads
    double cell_length = 10e-6;         // meters

    // [profile]
    std::string profile_kind = "cubic";  // cubic | constant | tabulated
    double scale_a = 1e-3;               // meters per position unit
    double constant_speed = 1.0;         // dimensionless, constant profile
    std::string samples_path;            // tabulated profile data file

    // [design]
    double window_min = -1.2599210498948732;
    double window_max = -1.0;
    std::size_t cells = 64;
    double margin_delta = 0.05;
    std::string branch_policy = "auto";  // auto | cos_positive | cos_negative
    double safe_delta = 0.1;

    // [lattice]
    std::size_t padding_cells = 64;
    double cfl_factor = 0.5;
    std::string boundary = "matched";  // matched | reflective
    double cap_multiple = 1e3;
    double pulse_carrier = 0.0;    // rad/s, 0 selects an automatic value
    double pulse_sigma = 0.0;      // seconds, 0 selects an automatic value
    double pulse_amplitude = 1e-3; // volts
    long injection_cell = -1;      // -1 selects an automatic cell
    long probe_a = -1;
    long probe_b = -1;

    // [output]
    std::string out_dir;

    /// Merges a config file into this object. Throws std::runtime_error
    /// with a line-numbered message on unknown keys or malformed values.
    void load_file(const std::string& path);

    /// Output directory precedence: command-line flag, config file,
    /// CHRONO_SQUID_OUT environment variable, current directory.
    std::string resolve_out_dir(const std::string& flag_value) const;
};

SquidParams make_params(const RunConfig& config);
SpeedProfile make_profile(const RunConfig& config);
BranchPolicy make_branch_policy(const RunConfig& config);
Boundary make_boundary(const RunConfig& config);

/// 17-significant-digit decimal form, enough to round-trip a double exactly.
std::string format_full(double value);

}  // namespace chronosquid::cli
