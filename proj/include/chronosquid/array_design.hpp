#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "chronosquid/spacetime.hpp"
#include "chronosquid/squid.hpp"

namespace chronosquid {

/// How the flux branch is chosen when inverting cell speeds.
enum class BranchPolicy {
    ForceCosPositive,
    ForceCosNegative,
    /// CosNegative, so that a profile approaching the horizon from speed 1
    /// gets a flux running continuously from 1 down toward 1/2.
    Auto,
};

struct DesignRequest {
    SpeedProfile profile;
    Interval window;         ///< design span, units of the profile scale
    std::size_t cell_count;  ///< number of SQUID cells across the window
    SquidParams params;
    BranchPolicy branch_policy = BranchPolicy::Auto;
    /// Cells with |f - 1/2| below this margin are flagged critical.
    double margin_delta = 0.05;
};

/// Flux assignment for one cell. Infeasible cells (speed not in (0, 1])
/// keep their position and target speed but carry NaN flux and inductance.
struct CellDesign {
    std::size_t index;
    double position;      ///< cell-center coordinate
    double target_speed;  ///< signed dimensionless speed at the center
    double speed_sq;
    double flux;          ///< dimensionless, NaN when infeasible
    double inductance;    ///< henries; +infinity past the cosine floor
    bool critical;
    bool feasible;
};

struct ArrayDesign {
    std::vector<CellDesign> cells;  ///< ordered by index, uniform spacing
    Interval window;
    double cell_width;

    std::size_t feasible_count() const;
};

/// Maximal sub-windows of the search interval where 0 < c_tilde and
/// c_tilde^2 <= 1, so the profile can be realized by a flux. Boundaries are
/// located by bisection to 1e-12 after a uniform scan; features narrower
/// than the scan step (search width / 4096) can be missed.
std::vector<Interval> feasibility_window(const SpeedProfile& profile,
                                         Interval search);

/// Discretizes the profile over the window into cell_count cells at uniform
/// cell centers and assigns each feasible cell a flux and an inductance.
/// Throws EmptyDesignError when no cell at all is feasible (or none were
/// requested).
ArrayDesign design_array(const DesignRequest& request);

/// Cells whose flux sits within delta of the critical point 1/2.
struct CriticalProximity {
    std::size_t count;
    double fraction;  ///< count over the number of feasible cells
    std::vector<double> positions;
};

CriticalProximity critical_proximity(const ArrayDesign& design, double delta);

/// Largest sub-window of the feasibility region where the assigned flux
/// keeps a margin delta_f above the critical point, f >= 1/2 + delta_f, on
/// the negative-cosine branch. The interior boundary is refined to 1e-10.
/// The optional search interval defaults to [-2, 0] for cubic profiles and
/// to the sample span for tabulated ones; analytic profiles must provide
/// one. Throws EmptyWindowError when no point keeps the margin.
Interval safe_window(const SpeedProfile& profile, double delta_f,
                     std::optional<Interval> search = std::nullopt);

/// One row of the flux-versus-position curve for the cubic ramp.
struct Figure1Row {
    double x_over_a;
    double flux_pi;    ///< pi times the flux ratio, i.e. arccos(-x^6 / 4)
    double threshold;  ///< the critical value pi/2, constant column
};

/// Samples arccos(-x_hat^6 / 4) at point_count uniform positions from
/// -2^(1/3) inclusive toward 0 exclusive. Monotonically decreasing from pi
/// to just above pi/2.
std::vector<Figure1Row> figure1_curve(std::size_t point_count);

}  // namespace chronosquid
