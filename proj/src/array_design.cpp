#include "chronosquid/array_design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "chronosquid/numerics.hpp"

namespace chronosquid {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCbrt2 = 1.2599210498948732;
constexpr std::size_t kScanSamples = 4096;
constexpr double kWindowBoundaryTol = 1e-12;
constexpr double kSafeBoundaryTol = 1e-10;

bool feasible_speed(double c) { return c > 0.0 && c * c <= 1.0; }

void require_margin(double value, const char* name) {
    if (!(value > 0.0 && value < 0.5)) {
        std::ostringstream msg;
        msg << name << " must lie in (0, 1/2), got " << value;
        throw std::invalid_argument(msg.str());
    }
}

/// Maximal runs where pred holds, located by a uniform scan of the interval
/// followed by bisection of every transition. extra_probes are inspected in
/// addition to the grid, so runs known to touch those points survive even
/// when they are narrower than the scan step.
std::vector<Interval> scan_for_runs(const std::function<bool(double)>& pred,
                                    Interval search, double boundary_tol,
                                    const std::vector<double>& extra_probes) {
    std::vector<double> grid;
    grid.reserve(kScanSamples + 1 + extra_probes.size());
    for (std::size_t i = 0; i <= kScanSamples; ++i) {
        grid.push_back(search.lo + search.width() * static_cast<double>(i) /
                                       static_cast<double>(kScanSamples));
    }
    for (double p : extra_probes) {
        if (p > search.lo && p < search.hi) grid.push_back(p);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<Interval> runs;
    bool prev_state = pred(grid.front());
    double run_start = search.lo;
    double prev_x = grid.front();
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const bool state = pred(grid[i]);
        if (state != prev_state) {
            const double edge =
                numerics::bisect_boundary(pred, prev_x, grid[i], boundary_tol);
            if (prev_state) {
                runs.push_back(Interval{run_start, edge});
            } else {
                run_start = edge;
            }
        }
        prev_state = state;
        prev_x = grid[i];
    }
    if (prev_state) runs.push_back(Interval{run_start, search.hi});
    return runs;
}

}  // namespace

std::size_t ArrayDesign::feasible_count() const {
    return static_cast<std::size_t>(
        std::count_if(cells.begin(), cells.end(),
                      [](const CellDesign& c) { return c.feasible; }));
}

std::vector<Interval> feasibility_window(const SpeedProfile& profile,
                                         Interval search) {
    if (!(search.lo < search.hi)) {
        throw std::invalid_argument("feasibility_window: empty search interval");
    }
    return scan_for_runs(
        [&profile](double x) { return feasible_speed(profile(x)); }, search,
        kWindowBoundaryTol, {});
}

ArrayDesign design_array(const DesignRequest& request) {
    request.params.validate();
    if (!(request.window.lo < request.window.hi)) {
        throw std::invalid_argument("design window must satisfy lo < hi");
    }
    if (request.cell_count == 0) {
        throw EmptyDesignError("a design needs at least one cell");
    }
    require_margin(request.margin_delta, "margin_delta");

    const Branch branch = request.branch_policy == BranchPolicy::ForceCosPositive
                              ? Branch::CosPositive
                              : Branch::CosNegative;
    ArrayDesign design;
    design.window = request.window;
    design.cell_width =
        request.window.width() / static_cast<double>(request.cell_count);
    design.cells.reserve(request.cell_count);
    for (std::size_t n = 0; n < request.cell_count; ++n) {
        CellDesign cell;
        cell.index = n;
        cell.position = request.window.lo +
                        (static_cast<double>(n) + 0.5) * design.cell_width;
        cell.target_speed = metric_speed(request.profile, cell.position);
        cell.speed_sq = cell.target_speed * cell.target_speed;
        if (!feasible_speed(cell.target_speed)) {
            cell.flux = std::numeric_limits<double>::quiet_NaN();
            cell.inductance = std::numeric_limits<double>::quiet_NaN();
            cell.critical = false;
            cell.feasible = false;
        } else {
            cell.flux = flux_for_speed(cell.speed_sq, branch).value();
            cell.critical = std::abs(cell.flux - 0.5) < request.margin_delta;
            cell.feasible = true;
            try {
                cell.inductance =
                    squid_inductance(request.params, FluxRatio(cell.flux));
            } catch (const CriticalFluxError&) {
                // The target speed is valid but so slow that the flux sits on
                // the critical point at double precision. The cell stays in
                // the design; the divergent inductance is what downstream
                // hardware checks reject.
                cell.inductance = std::numeric_limits<double>::infinity();
                cell.critical = true;
            }
        }
        design.cells.push_back(cell);
    }
    if (design.feasible_count() == 0) {
        std::ostringstream msg;
        msg << "no feasible cell in window [" << request.window.lo << ", "
            << request.window.hi << "]";
        throw EmptyDesignError(msg.str());
    }
    return design;
}

CriticalProximity critical_proximity(const ArrayDesign& design, double delta) {
    require_margin(delta, "delta");
    CriticalProximity result;
    result.count = 0;
    std::size_t feasible = 0;
    for (const CellDesign& cell : design.cells) {
        if (!cell.feasible) continue;
        ++feasible;
        if (std::abs(cell.flux - 0.5) < delta) {
            ++result.count;
            result.positions.push_back(cell.position);
        }
    }
    result.fraction =
        feasible == 0
            ? 0.0
            : static_cast<double>(result.count) / static_cast<double>(feasible);
    return result;
}

Interval safe_window(const SpeedProfile& profile, double delta_f,
                     std::optional<Interval> search) {
    require_margin(delta_f, "delta_f");
    Interval span{};
    if (search) {
        span = *search;
        if (!(span.lo < span.hi)) {
            throw std::invalid_argument("safe_window: empty search interval");
        }
    } else {
        switch (profile.kind()) {
            case SpeedProfile::Kind::Cubic:
                span = Interval{-2.0, 0.0};
                break;
            case SpeedProfile::Kind::Tabulated:
                span = Interval{profile.samples().front().position,
                                profile.samples().back().position};
                break;
            case SpeedProfile::Kind::Analytic:
                throw std::invalid_argument(
                    "safe_window: analytic profiles need an explicit search "
                    "interval");
        }
    }

    const auto keeps_margin = [&profile, delta_f](double x) {
        const double c = profile(x);
        if (!feasible_speed(c)) return false;
        const double f = flux_for_speed(c * c, Branch::CosNegative).value();
        return f >= 0.5 + delta_f;
    };

    Interval best{0.0, 0.0};
    bool found = false;
    for (const Interval& feasible : feasibility_window(profile, span)) {
        // Probing just inside the feasibility edges keeps margin slivers
        // attached to an edge from slipping between scan points.
        const double inset =
            1e-11 * std::max({1.0, std::abs(feasible.lo), std::abs(feasible.hi)});
        std::vector<double> probes{feasible.lo + inset, feasible.hi - inset};
        for (const Interval& run :
             scan_for_runs(keeps_margin, feasible, kSafeBoundaryTol, probes)) {
            if (!found || run.width() > best.width()) {
                best = run;
                found = true;
            }
        }
    }
    if (!found) {
        std::ostringstream msg;
        msg << "no point keeps flux margin " << delta_f
            << " above the critical value";
        throw EmptyWindowError(msg.str());
    }
    return best;
}

std::vector<Figure1Row> figure1_curve(std::size_t point_count) {
    if (point_count < 2) {
        throw std::invalid_argument("figure1_curve needs at least two points");
    }
    std::vector<Figure1Row> rows;
    rows.reserve(point_count);
    for (std::size_t i = 0; i < point_count; ++i) {
        // x runs from -2^(1/3) up to (but excluding) 0.
        const double x = -kCbrt2 * (1.0 - static_cast<double>(i) /
                                              static_cast<double>(point_count));
        const double x3 = x * x * x;
        // At the left endpoint x^6/4 can round a few ulp above 1; clamp so
        // the arccosine stays defined and the first row is exactly pi.
        const double arg = std::clamp(-(x3 * x3) / 4.0, -1.0, 1.0);
        rows.push_back(Figure1Row{x, std::acos(arg), kPi / 2.0});
    }
    return rows;
}

}  // namespace chronosquid
