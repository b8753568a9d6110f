#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "chronosquid/array_design.hpp"
#include "chronosquid/lattice.hpp"
#include "chronosquid/spacetime.hpp"
#include "chronosquid/squid.hpp"
#include "run_config.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace chronosquid;
using cli::format_full;
using cli::RunConfig;

namespace {

// Exit codes: 0 success, 1 usage or config error, 2 infeasible cells in the
// design, 3 empty design, 4 horizon inside a geodesic interval, 5 unusable
// or out-of-tolerance time-of-flight, 6 cells beyond the inductance cap.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitEmptyDesign = 3;
constexpr int kExitHorizon = 4;
constexpr int kExitMeasurement = 5;
constexpr int kExitCriticalCells = 6;

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

json interval_json(const Interval& interval) {
    return json::array({interval.lo, interval.hi});
}

int run_design(const RunConfig& config, const std::string& out_dir) {
    const SquidParams params = cli::make_params(config);
    const SpeedProfile profile = cli::make_profile(config);
    DesignRequest request;
    request.profile = profile;
    request.window = Interval{config.window_min, config.window_max};
    request.cell_count = config.cells;
    request.params = params;
    request.branch_policy = cli::make_branch_policy(config);
    request.margin_delta = config.margin_delta;

    const ArrayDesign design = design_array(request);

    fs::create_directories(out_dir);
    {
        std::ofstream csv = open_output(fs::path(out_dir) / "design.csv");
        csv << "index,x_over_a,c_tilde,flux_over_phi0,inductance_H,"
               "critical_flag,feasible_flag\n";
        for (const CellDesign& cell : design.cells) {
            csv << cell.index << ',' << format_full(cell.position) << ','
                << format_full(cell.target_speed) << ','
                << format_full(cell.flux) << ','
                << format_full(cell.inductance) << ',' << (cell.critical ? 1 : 0)
                << ',' << (cell.feasible ? 1 : 0) << '\n';
        }
    }

    json report;
    report["cells"] = design.cells.size();
    report["feasible_cells"] = design.feasible_count();
    report["cell_width"] = design.cell_width;
    report["window"] = interval_json(design.window);
    json windows = json::array();
    for (const Interval& w : feasibility_window(profile, request.window)) {
        windows.push_back(interval_json(w));
    }
    report["feasibility_windows"] = windows;
    report["safe_delta"] = config.safe_delta;
    try {
        report["safe_window"] =
            interval_json(safe_window(profile, config.safe_delta, request.window));
    } catch (const EmptyWindowError&) {
        report["safe_window"] = nullptr;
    }
    const CriticalProximity proximity =
        critical_proximity(design, config.margin_delta);
    report["margin_delta"] = config.margin_delta;
    report["critical_count"] = proximity.count;
    report["critical_fraction"] = proximity.fraction;
    {
        std::ofstream out = open_output(fs::path(out_dir) / "feasibility.json");
        out << report.dump(2) << '\n';
    }

    std::cout << "design: " << design.feasible_count() << "/"
              << design.cells.size() << " cells feasible, "
              << proximity.count << " near-critical\n";
    return design.feasible_count() == design.cells.size() ? kExitOk
                                                          : kExitInfeasible;
}

int run_geodesics(const RunConfig& config, double x1, double x2) {
    const SquidParams params = cli::make_params(config);
    const SpeedProfile profile = cli::make_profile(config);
    const double seconds_per_time_unit = config.scale_a / base_speed(params);

    TripReport report;
    try {
        report = round_trip_time(profile, x1, x2);
    } catch (const HorizonInPathError& e) {
        json failure;
        failure["error"] = "horizon_in_path";
        failure["horizon_position"] = e.horizon_position;
        std::cout << failure.dump(2) << '\n';
        std::cerr << "error: " << e.what() << '\n';
        return kExitHorizon;
    }

    Interval scan{std::min(x1, x2) - 1.0, std::max(x1, x2) + 1.0};
    if (profile.kind() == SpeedProfile::Kind::Tabulated) {
        scan.lo = std::max(scan.lo, profile.samples().front().position);
        scan.hi = std::min(scan.hi, profile.samples().back().position);
    }
    json horizons = json::array();
    if (scan.lo < scan.hi) {
        for (double z : find_horizons(profile, scan, 1025)) {
            horizons.push_back(z);
        }
    }

    json out;
    out["x1"] = report.x1;
    out["x2"] = report.x2;
    out["one_way_time"] = report.one_way_time;
    out["round_trip_time"] = report.round_trip_time;
    out["causal"] = report.causal;
    out["method"] = report.method == TripReport::Method::ClosedForm
                        ? "closed_form"
                        : "quadrature";
    out["horizons"] = horizons;
    out["seconds_per_time_unit"] = seconds_per_time_unit;
    out["one_way_seconds"] = report.one_way_time * seconds_per_time_unit;
    out["round_trip_seconds"] = report.round_trip_time * seconds_per_time_unit;
    std::cout << out.dump(2) << '\n';
    return kExitOk;
}

int run_figure1(const RunConfig& config, std::size_t points,
                const std::string& out_dir) {
    (void)config;
    const auto rows = figure1_curve(points);
    fs::create_directories(out_dir);
    std::ofstream csv = open_output(fs::path(out_dir) / "figure1.csv");
    csv << "x_over_a,flux_pi,threshold\n";
    for (const Figure1Row& row : rows) {
        csv << format_full(row.x_over_a) << ',' << format_full(row.flux_pi)
            << ',' << format_full(row.threshold) << '\n';
    }
    std::cout << "figure1: " << rows.size() << " points\n";
    return kExitOk;
}

int run_simulate(const RunConfig& config, const std::string& out_dir) {
    const SquidParams params = cli::make_params(config);
    const SpeedProfile profile = cli::make_profile(config);
    DesignRequest request;
    request.profile = profile;
    request.window = Interval{config.window_min, config.window_max};
    request.cell_count = config.cells;
    request.params = params;
    request.branch_policy = cli::make_branch_policy(config);
    request.margin_delta = config.margin_delta;

    const ArrayDesign design = design_array(request);
    if (design.feasible_count() != design.cells.size()) {
        std::cerr << "error: " << design.cells.size() - design.feasible_count()
                  << " of " << design.cells.size()
                  << " cells are infeasible; shrink the window\n";
        return kExitInfeasible;
    }

    const LatticeSpec spec =
        build_lattice(design, params, config.padding_cells,
                      cli::make_boundary(config), config.cfl_factor,
                      config.cap_multiple);

    const std::size_t graded = design.cells.size();
    const std::size_t pad = config.padding_cells;
    std::size_t injection =
        config.injection_cell >= 0
            ? static_cast<std::size_t>(config.injection_cell)
            : (pad >= 2 ? pad / 2 : 0);
    std::size_t probe_a;
    std::size_t probe_b;
    if (config.probe_a >= 0 && config.probe_b >= 0) {
        probe_a = static_cast<std::size_t>(config.probe_a);
        probe_b = static_cast<std::size_t>(config.probe_b);
    } else {
        const std::size_t offset = std::max<std::size_t>(16, graded / 8);
        if (graded < 2 * offset + 17) {
            throw std::runtime_error(
                "too few cells for automatic probe placement; set "
                "lattice.probe_a and lattice.probe_b");
        }
        probe_a = pad + offset;
        probe_b = pad + graded - 1 - offset;
    }
    if (injection >= spec.size() || probe_a >= spec.size() ||
        probe_b >= spec.size()) {
        throw std::runtime_error("injection or probe index outside the lattice");
    }

    PulseSpec pulse;
    pulse.amplitude = config.pulse_amplitude;
    pulse.injection_cell = injection;
    if (config.pulse_sigma > 0.0) {
        pulse.envelope_width = config.pulse_sigma;
    } else {
        const double sigma_cells =
            std::max(12.0, static_cast<double>(graded) / 6.0);
        pulse.envelope_width =
            sigma_cells * std::sqrt(spec.cell_inductances[injection] *
                                    spec.cell_capacitance);
    }
    if (config.pulse_carrier > 0.0) {
        pulse.carrier_angular_frequency = config.pulse_carrier;
    } else {
        pulse.carrier_angular_frequency =
            std::min(4.0 / pulse.envelope_width,
                     0.95 * dispersion_report(spec).recommended_max_carrier);
    }

    ProbeLog log;
    const TimeOfFlight tof =
        run_time_of_flight(spec, pulse, probe_a, probe_b, &log);

    fs::create_directories(out_dir);
    {
        std::ofstream csv = open_output(fs::path(out_dir) / "probes.csv");
        csv << "step,time_s,voltage_a,voltage_b\n";
        for (std::size_t k = 0; k < log.voltage_a.size(); ++k) {
            csv << (k + 1) << ','
                << format_full(static_cast<double>(k + 1) * log.dt) << ','
                << format_full(log.voltage_a[k]) << ','
                << format_full(log.voltage_b[k]) << '\n';
        }
    }

    json out;
    out["measured_delay"] = tof.measured_delay;
    out["predicted_delay"] = tof.predicted_delay;
    out["relative_error"] = tof.relative_error;
    out["cells"] = spec.size();
    out["dt"] = spec.time_step;
    out["graded_cells"] = graded;
    out["padding_cells"] = pad;
    out["injection_cell"] = injection;
    out["probe_a"] = probe_a;
    out["probe_b"] = probe_b;
    out["boundary"] = config.boundary;
    out["pulse"] = {
        {"carrier_angular_frequency", pulse.carrier_angular_frequency},
        {"envelope_width", pulse.envelope_width},
        {"amplitude", pulse.amplitude},
    };
    // Continuum comparison, available when both probes sit in the graded
    // section so their positions map into the design window.
    out["continuum_delay"] = nullptr;
    out["continuum_relative_error"] = nullptr;
    const double cell_width = design.cell_width;
    const double effective_scale =
        params.cell_length * static_cast<double>(graded) /
        design.window.width();
    out["effective_scale_a_m"] = effective_scale;
    if (probe_a >= pad && probe_a <= pad + graded && probe_b >= pad &&
        probe_b <= pad + graded) {
        const double xa =
            design.window.lo +
            static_cast<double>(probe_a - pad) * cell_width;
        const double xb =
            design.window.lo +
            static_cast<double>(probe_b - pad) * cell_width;
        try {
            const double dimensionless = elapsed_time(profile, xa, xb);
            const double continuum =
                dimensionless * effective_scale / base_speed(params);
            out["continuum_delay"] = continuum;
            out["continuum_relative_error"] =
                (tof.measured_delay - continuum) / std::abs(continuum);
        } catch (const Error&) {
            // Horizon or domain trouble at the probe edges; the discrete
            // prediction in relative_error still stands.
        }
    }
    {
        std::ofstream file = open_output(fs::path(out_dir) / "tof.json");
        file << out.dump(2) << '\n';
    }

    std::cout << "simulate: measured " << format_full(tof.measured_delay)
              << " s, predicted " << format_full(tof.predicted_delay)
              << " s, relative error " << format_full(tof.relative_error)
              << '\n';
    return std::abs(tof.relative_error) <= 0.05 ? kExitOk : kExitMeasurement;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dc-SQUID transmission-line spacetime toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_flag;
    std::string window_flag;
    std::size_t cells_flag = 0;
    std::size_t points = 200;
    double x1 = 0.0;
    double x2 = 0.0;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "configuration file");
        cmd->add_option("--out", out_flag, "output directory");
    };

    CLI::App* cmd_design =
        app.add_subcommand("design", "discretize the speed profile into a "
                                     "per-cell flux design");
    add_common(cmd_design);
    CLI::Option* design_window =
        cmd_design->add_option("--window", window_flag, "design window MIN:MAX");
    CLI::Option* design_cells =
        cmd_design->add_option("--cells", cells_flag, "number of cells");

    CLI::App* cmd_geo = app.add_subcommand(
        "geodesics", "null-geodesic travel times between two positions");
    add_common(cmd_geo);
    cmd_geo->add_option("--x1", x1, "start position")->required();
    cmd_geo->add_option("--x2", x2, "turnaround position")->required();

    CLI::App* cmd_fig =
        app.add_subcommand("figure1", "flux-versus-position curve data");
    add_common(cmd_fig);
    cmd_fig->add_option("--points", points, "number of sample points");

    CLI::App* cmd_sim = app.add_subcommand(
        "simulate", "lattice time-of-flight against the geodesic prediction");
    add_common(cmd_sim);
    CLI::Option* sim_window =
        cmd_sim->add_option("--window", window_flag, "design window MIN:MAX");
    CLI::Option* sim_cells =
        cmd_sim->add_option("--cells", cells_flag, "number of cells");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    RunConfig config;
    try {
        if (!config_path.empty()) {
            config.load_file(config_path);
        }
        if (design_window->count() > 0 || sim_window->count() > 0) {
            const auto colon = window_flag.find(':', 1);
            if (colon == std::string::npos) {
                throw std::runtime_error(
                    "--window expects MIN:MAX, got '" + window_flag + "'");
            }
            config.window_min = std::stod(window_flag.substr(0, colon));
            config.window_max = std::stod(window_flag.substr(colon + 1));
        }
        if (design_cells->count() > 0 || sim_cells->count() > 0) {
            config.cells = cells_flag;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    const std::string out_dir = config.resolve_out_dir(out_flag);

    try {
        if (app.got_subcommand(cmd_design)) {
            return run_design(config, out_dir);
        }
        if (app.got_subcommand(cmd_geo)) {
            return run_geodesics(config, x1, x2);
        }
        if (app.got_subcommand(cmd_fig)) {
            return run_figure1(config, points, out_dir);
        }
        return run_simulate(config, out_dir);
    } catch (const CriticalCellError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCriticalCells;
    } catch (const EmptyDesignError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitEmptyDesign;
    } catch (const HorizonInPathError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitHorizon;
    } catch (const NoArrivalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitMeasurement;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
