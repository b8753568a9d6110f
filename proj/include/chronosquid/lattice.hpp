#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "chronosquid/array_design.hpp"
#include "chronosquid/squid.hpp"

namespace chronosquid {

enum class Boundary {
    /// Resistive termination R = sqrt(L/C) at both end cells, emulating an
    /// infinite line.
    MatchedTermination,
    /// Open ends; pulses reflect and all energy stays on the lattice.
    Reflective,
};

/// Discrete LC ladder: one series inductor and one shunt capacitor per
/// cell. Node n sits between inductor n-1 and inductor n; inductor n
/// couples nodes n and n+1, so the last list entry only sets the
/// termination impedance on the right.
struct LatticeSpec {
    std::vector<double> cell_inductances;  ///< henries
    double cell_capacitance;               ///< farads, shared by every node
    double cell_length;                    ///< meters per cell
    double time_step;                      ///< seconds
    Boundary boundary = Boundary::MatchedTermination;
    double inductance_cap = std::numeric_limits<double>::infinity();

    std::size_t size() const { return cell_inductances.size(); }

    /// Throws std::invalid_argument on non-positive entries, an inductance
    /// above the cap, or a time step beyond the stability limit
    /// sqrt(L_min C).
    void validate() const;
};

struct LatticeState {
    std::vector<double> node_voltages;   ///< volts, one per cell
    std::vector<double> branch_currents; ///< amperes, inductor n in slot n
    std::uint64_t step_index = 0;
    /// Scale against which the blowup guard compares field magnitudes.
    double blowup_reference = 1.0;
};

LatticeState make_state(const LatticeSpec& spec);

/// Advances one leapfrog step: every current picks up the voltage
/// difference across its inductor, then every voltage picks up the current
/// divergence at its node. Throws NumericalBlowupError when any magnitude
/// exceeds 1e12 times the state's blowup reference.
void step(LatticeState& state, const LatticeSpec& spec);

/// The discrete invariant of the leapfrog update,
///
///     E = sum C V_n^2 / 2 + sum L_n I_n(k-1/2) I_n(k+1/2) / 2,
///
/// with the inductor term time-centered around the voltage time level: the
/// stored currents supply the lagging factor and the leading one is
/// reconstructed from the stored voltages. With reflective ends and no
/// source this is conserved to rounding error.
double total_energy(const LatticeState& state, const LatticeSpec& spec);

/// Gaussian wave packet driven into one cell as a soft source.
struct PulseSpec {
    double carrier_angular_frequency;  ///< rad/s; 0 means a plain gaussian
    double envelope_width;             ///< seconds, gaussian sigma
    double amplitude;                  ///< volts, scale of the injected wave
    std::size_t injection_cell;
};

struct TimeOfFlight {
    std::size_t probe_a;
    std::size_t probe_b;
    double measured_delay;   ///< seconds, signed (negative when b is left of a)
    double predicted_delay;  ///< seconds, sum of sqrt(L_n C) between probes
    double relative_error;   ///< (measured - predicted) / |predicted|
};

/// Per-step probe voltages, recorded once per time step.
struct ProbeLog {
    std::vector<double> voltage_a;
    std::vector<double> voltage_b;
    double dt = 0.0;
};

/// Realizes a feasible flux design as a lattice: per-cell inductances are
/// recomputed from the designed fluxes with the given params, padded left
/// and right with padding_cells copies of the respective edge inductance,
/// and the time step is set to cfl_factor * sqrt(L_min C). Cells whose
/// inductance exceeds cap_multiple times the zero-flux inductance are
/// collected into a CriticalCellError.
LatticeSpec build_lattice(const ArrayDesign& design, const SquidParams& params,
                          std::size_t padding_cells,
                          Boundary boundary = Boundary::MatchedTermination,
                          double cfl_factor = 0.5, double cap_multiple = 1e3);

/// Per-cell cutoff angular frequencies 2 / sqrt(L_n C) of the ladder.
struct CutoffReport {
    std::vector<double> cell_cutoffs;      ///< rad/s
    double min_cutoff;
    std::size_t min_cutoff_cell;
    double recommended_max_carrier;        ///< a tenth of the minimum cutoff
};

CutoffReport dispersion_report(const LatticeSpec& spec);

/// Injects the pulse, runs until the slower probe must have seen it, and
/// measures the delay between the energy centroids of the two probe
/// records. The probes must be at least 16 cells apart; sizing the lattice
/// so reflections stay clear of the probes is the caller's responsibility.
/// Throws NoArrivalError when probe_b's captured energy is below 1e-6 of
/// probe_a's (or probe_a saw nothing at all).
TimeOfFlight run_time_of_flight(const LatticeSpec& spec, const PulseSpec& pulse,
                                std::size_t probe_a, std::size_t probe_b,
                                ProbeLog* log = nullptr);

}  // namespace chronosquid
