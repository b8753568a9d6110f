#include "chronosquid/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace chronosquid {

namespace {

constexpr double kBlowupFactor = 1e12;
constexpr double kArrivalEnergyRatio = 1e-6;
constexpr std::size_t kMinProbeSeparation = 16;

void require_consistent(const LatticeState& state, const LatticeSpec& spec) {
    if (state.node_voltages.size() != spec.size() ||
        state.branch_currents.size() != spec.size()) {
        throw std::invalid_argument(
            "lattice state sizes do not match the lattice spec");
    }
}

}  // namespace

void LatticeSpec::validate() const {
    if (size() < 2) {
        throw std::invalid_argument("lattice needs at least two cells");
    }
    double l_min = cell_inductances.front();
    for (double l : cell_inductances) {
        if (!std::isfinite(l) || l <= 0.0) {
            throw std::invalid_argument("cell inductances must be positive finite");
        }
        if (l > inductance_cap) {
            throw std::invalid_argument("cell inductance exceeds the cap");
        }
        l_min = std::min(l_min, l);
    }
    if (!std::isfinite(cell_capacitance) || cell_capacitance <= 0.0) {
        throw std::invalid_argument("cell capacitance must be positive finite");
    }
    if (!std::isfinite(cell_length) || cell_length <= 0.0) {
        throw std::invalid_argument("cell length must be positive finite");
    }
    const double dt_max = std::sqrt(l_min * cell_capacitance);
    if (!(time_step > 0.0) || time_step > dt_max * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "time step " << time_step << " exceeds the stability limit "
            << dt_max;
        throw std::invalid_argument(msg.str());
    }
}

LatticeState make_state(const LatticeSpec& spec) {
    LatticeState state;
    state.node_voltages.assign(spec.size(), 0.0);
    state.branch_currents.assign(spec.size(), 0.0);
    return state;
}

void step(LatticeState& state, const LatticeSpec& spec) {
    require_consistent(state, spec);
    const std::size_t n = spec.size();
    if (n < 2) {
        throw std::invalid_argument("lattice needs at least two cells");
    }
    auto& v = state.node_voltages;
    auto& i = state.branch_currents;
    const auto& l = spec.cell_inductances;
    const double dt = spec.time_step;
    const double cap = spec.cell_capacitance;

    double max_mag = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        i[k] += dt / l[k] * (v[k] - v[k + 1]);
        max_mag = std::max(max_mag, std::abs(i[k]));
    }

    double i_left = 0.0;
    double i_right = 0.0;
    if (spec.boundary == Boundary::MatchedTermination) {
        i_left = -(v[0] / std::sqrt(l.front() / cap));
        i_right = v[n - 1] / std::sqrt(l.back() / cap);
    }
    v[0] += dt / cap * (i_left - i[0]);
    for (std::size_t k = 1; k + 1 < n; ++k) {
        v[k] += dt / cap * (i[k - 1] - i[k]);
    }
    v[n - 1] += dt / cap * (i[n - 2] - i_right);
    for (double value : v) {
        max_mag = std::max(max_mag, std::abs(value));
    }

    ++state.step_index;
    if (!(max_mag <= kBlowupFactor * state.blowup_reference)) {
        std::ostringstream msg;
        msg << "field magnitude " << max_mag << " exceeded "
            << kBlowupFactor * state.blowup_reference << " at step "
            << state.step_index;
        throw NumericalBlowupError(msg.str());
    }
}

double total_energy(const LatticeState& state, const LatticeSpec& spec) {
    require_consistent(state, spec);
    const std::size_t n = spec.size();
    double energy = 0.0;
    for (double v : state.node_voltages) {
        energy += 0.5 * spec.cell_capacitance * v * v;
    }
    // The stored currents lag the voltages by half a step; the partner half
    // a step ahead is reconstructed with the same update the next step
    // would apply. Pairing the two half-step currents around the voltage
    // time level makes this the exact invariant of the scheme on
    // reflective ends. The last branch never carries current.
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double ahead =
            state.branch_currents[k] +
            spec.time_step / spec.cell_inductances[k] *
                (state.node_voltages[k] - state.node_voltages[k + 1]);
        energy += 0.5 * spec.cell_inductances[k] * state.branch_currents[k] *
                  ahead;
    }
    return energy;
}

LatticeSpec build_lattice(const ArrayDesign& design, const SquidParams& params,
                          std::size_t padding_cells, Boundary boundary,
                          double cfl_factor, double cap_multiple) {
    params.validate();
    if (!(cfl_factor > 0.0 && cfl_factor <= 1.0)) {
        throw std::invalid_argument("cfl_factor must lie in (0, 1]");
    }
    if (!(cap_multiple >= 1.0)) {
        throw std::invalid_argument("cap_multiple must be at least 1");
    }
    if (design.cells.empty()) {
        throw EmptyDesignError("cannot build a lattice from an empty design");
    }
    const double l_zero = squid_inductance(params, FluxRatio(0.0));
    const double cap = cap_multiple * l_zero;

    std::vector<double> graded;
    graded.reserve(design.cells.size());
    std::vector<std::size_t> over_cap;
    for (const CellDesign& cell : design.cells) {
        if (!cell.feasible) {
            std::ostringstream msg;
            msg << "design cell " << cell.index
                << " is infeasible; the lattice needs an all-feasible design";
            throw std::invalid_argument(msg.str());
        }
        double inductance;
        try {
            inductance = squid_inductance(params, FluxRatio(cell.flux));
        } catch (const CriticalFluxError&) {
            inductance = std::numeric_limits<double>::infinity();
        }
        if (!(inductance <= cap)) {
            over_cap.push_back(cell.index);
        }
        graded.push_back(inductance);
    }
    if (!over_cap.empty()) {
        std::ostringstream msg;
        msg << over_cap.size() << " cell(s) need an inductance above "
            << cap << " H (" << cap_multiple
            << " times the zero-flux value); nearest the critical flux is "
            << "cell " << over_cap.front();
        throw CriticalCellError(msg.str(), std::move(over_cap));
    }

    LatticeSpec spec;
    spec.cell_inductances.reserve(graded.size() + 2 * padding_cells);
    spec.cell_inductances.insert(spec.cell_inductances.end(), padding_cells,
                                 graded.front());
    spec.cell_inductances.insert(spec.cell_inductances.end(), graded.begin(),
                                 graded.end());
    spec.cell_inductances.insert(spec.cell_inductances.end(), padding_cells,
                                 graded.back());
    spec.cell_capacitance = params.cell_capacitance;
    spec.cell_length = params.cell_length;
    spec.boundary = boundary;
    spec.inductance_cap = cap;
    const double l_min = *std::min_element(spec.cell_inductances.begin(),
                                           spec.cell_inductances.end());
    spec.time_step = cfl_factor * std::sqrt(l_min * params.cell_capacitance);
    spec.validate();
    return spec;
}

CutoffReport dispersion_report(const LatticeSpec& spec) {
    spec.validate();
    CutoffReport report;
    report.cell_cutoffs.reserve(spec.size());
    report.min_cutoff = std::numeric_limits<double>::infinity();
    report.min_cutoff_cell = 0;
    for (std::size_t k = 0; k < spec.size(); ++k) {
        const double cutoff =
            2.0 / std::sqrt(spec.cell_inductances[k] * spec.cell_capacitance);
        report.cell_cutoffs.push_back(cutoff);
        if (cutoff < report.min_cutoff) {
            report.min_cutoff = cutoff;
            report.min_cutoff_cell = k;
        }
    }
    report.recommended_max_carrier = 0.1 * report.min_cutoff;
    return report;
}

namespace {

/// Energy-weighted mean arrival time of a probe record, restricted to a
/// window of half-width 6 sigma around the strongest sample so trailing
/// reflections do not drag the centroid.
double windowed_centroid(const std::vector<double>& record, double dt,
                         double sigma) {
    std::size_t peak = 0;
    double best = -1.0;
    for (std::size_t k = 0; k < record.size(); ++k) {
        const double e = record[k] * record[k];
        if (e > best) {
            best = e;
            peak = k;
        }
    }
    const auto half_width =
        static_cast<std::size_t>(std::ceil(6.0 * sigma / dt));
    const std::size_t lo = peak > half_width ? peak - half_width : 0;
    const std::size_t hi = std::min(record.size(), peak + half_width + 1);
    double weight = 0.0;
    double moment = 0.0;
    for (std::size_t k = lo; k < hi; ++k) {
        const double e = record[k] * record[k];
        weight += e;
        moment += e * (static_cast<double>(k + 1) * dt);
    }
    return moment / weight;
}

}  // namespace

TimeOfFlight run_time_of_flight(const LatticeSpec& spec, const PulseSpec& pulse,
                                std::size_t probe_a, std::size_t probe_b,
                                ProbeLog* log) {
    spec.validate();
    const std::size_t n = spec.size();
    if (probe_a >= n || probe_b >= n || pulse.injection_cell >= n) {
        throw std::invalid_argument("probe or injection index outside the lattice");
    }
    const std::size_t separation =
        probe_a > probe_b ? probe_a - probe_b : probe_b - probe_a;
    if (separation < kMinProbeSeparation) {
        std::ostringstream msg;
        msg << "probes must be at least " << kMinProbeSeparation
            << " cells apart, got " << separation;
        throw std::invalid_argument(msg.str());
    }
    if (!(pulse.envelope_width > 0.0) || !std::isfinite(pulse.envelope_width)) {
        throw std::invalid_argument("pulse envelope width must be positive");
    }
    if (!(pulse.amplitude >= 0.0) || !std::isfinite(pulse.amplitude)) {
        throw std::invalid_argument("pulse amplitude must be non-negative");
    }
    const CutoffReport cutoffs = dispersion_report(spec);
    if (!(pulse.carrier_angular_frequency >= 0.0) ||
        pulse.carrier_angular_frequency >
            cutoffs.recommended_max_carrier * (1.0 + 1e-9)) {
        std::ostringstream msg;
        msg << "carrier " << pulse.carrier_angular_frequency
            << " rad/s is beyond the dispersion guard "
            << cutoffs.recommended_max_carrier << " rad/s";
        throw std::invalid_argument(msg.str());
    }

    std::vector<double> cell_delay(n);
    for (std::size_t k = 0; k < n; ++k) {
        cell_delay[k] =
            std::sqrt(spec.cell_inductances[k] * spec.cell_capacitance);
    }
    const auto transit = [&cell_delay](std::size_t from, std::size_t to) {
        const std::size_t lo = std::min(from, to);
        const std::size_t hi = std::max(from, to);
        double sum = 0.0;
        for (std::size_t k = lo; k < hi; ++k) sum += cell_delay[k];
        return sum;
    };

    const double sigma = pulse.envelope_width;
    const double t_start = 6.0 * sigma;
    const double latest_arrival =
        t_start + std::max(transit(pulse.injection_cell, probe_a),
                           transit(pulse.injection_cell, probe_b));
    const double t_end = latest_arrival + 8.0 * sigma;
    const auto steps =
        static_cast<std::size_t>(std::ceil(t_end / spec.time_step));

    LatticeState state = make_state(spec);
    state.blowup_reference = pulse.amplitude > 0.0 ? pulse.amplitude : 1.0;
    std::vector<double> record_a;
    std::vector<double> record_b;
    record_a.reserve(steps);
    record_b.reserve(steps);
    const double dt = spec.time_step;
    for (std::size_t k = 0; k < steps; ++k) {
        step(state, spec);
        // The source joins the voltage update, whose natural time is the
        // half step carried by the currents.
        const double t = (static_cast<double>(k) + 0.5) * dt;
        const double arg = (t - t_start) / sigma;
        const double envelope = std::exp(-0.5 * arg * arg);
        const double carrier =
            pulse.carrier_angular_frequency > 0.0
                ? std::sin(pulse.carrier_angular_frequency * (t - t_start))
                : 1.0;
        state.node_voltages[pulse.injection_cell] +=
            dt / sigma * pulse.amplitude * envelope * carrier;
        record_a.push_back(state.node_voltages[probe_a]);
        record_b.push_back(state.node_voltages[probe_b]);
    }

    double energy_a = 0.0;
    double energy_b = 0.0;
    for (double v : record_a) energy_a += v * v;
    for (double v : record_b) energy_b += v * v;
    if (energy_a == 0.0 || energy_b < kArrivalEnergyRatio * energy_a) {
        std::ostringstream msg;
        msg << "no usable arrival: probe energies " << energy_a << " and "
            << energy_b;
        throw NoArrivalError(msg.str());
    }

    TimeOfFlight result;
    result.probe_a = probe_a;
    result.probe_b = probe_b;
    result.measured_delay = windowed_centroid(record_b, dt, sigma) -
                            windowed_centroid(record_a, dt, sigma);
    const double magnitude = transit(probe_a, probe_b);
    result.predicted_delay = probe_b >= probe_a ? magnitude : -magnitude;
    result.relative_error = (result.measured_delay - result.predicted_delay) /
                            std::abs(result.predicted_delay);
    if (log) {
        log->voltage_a = std::move(record_a);
        log->voltage_b = std::move(record_b);
        log->dt = dt;
    }
    return result;
}

}  // namespace chronosquid
