#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "chronosquid/array_design.hpp"

using namespace chronosquid;

namespace {

constexpr double kCbrt2 = 1.2599210498948732;

SquidParams reference_params() {
    SquidParams p;
    p.critical_current = 1.25e-6;
    p.cell_capacitance = 90e-15;
    p.cell_length = 10e-6;
    return p;
}

DesignRequest cubic_request(Interval window, std::size_t cells) {
    DesignRequest request;
    request.profile = SpeedProfile::cubic();
    request.window = window;
    request.cell_count = cells;
    request.params = reference_params();
    return request;
}

}  // namespace

TEST_CASE("feasibility window of the cubic ramp") {
    const auto windows =
        feasibility_window(SpeedProfile::cubic(), Interval{-3.0, 3.0});
    REQUIRE(windows.size() == 1);
    CHECK(std::abs(windows[0].lo + kCbrt2) <= 1e-12);
    CHECK(std::abs(windows[0].hi) <= 1e-12);
}

TEST_CASE("feasibility window is empty right of the horizon") {
    CHECK(feasibility_window(SpeedProfile::cubic(), Interval{1.0, 2.0}).empty());
}

TEST_CASE("a flat unit profile is feasible everywhere") {
    const SpeedProfile flat = SpeedProfile::analytic([](double) { return 1.0; });
    const auto windows = feasibility_window(flat, Interval{0.0, 1.0});
    REQUIRE(windows.size() == 1);
    CHECK(windows[0].lo == 0.0);
    CHECK(windows[0].hi == 1.0);
}

TEST_CASE("four-cell design across the full feasible span") {
    const ArrayDesign design =
        design_array(cubic_request(Interval{-1.259921, -1.0}, 4));
    REQUIRE(design.cells.size() == 4);
    CHECK(design.feasible_count() == 4);
    CHECK(design.cell_width == doctest::Approx(0.259921 / 4.0).epsilon(1e-15));

    const double expected_flux[4] = {0.82639000211432715, 0.71159581470686518,
                                     0.64389331469424134, 0.59794461046158344};
    double prev = 1.0;
    for (int i = 0; i < 4; ++i) {
        const CellDesign& cell = design.cells[i];
        CHECK(cell.index == static_cast<std::size_t>(i));
        CHECK(cell.position ==
              design.window.lo + (i + 0.5) * design.cell_width);
        CHECK(cell.feasible);
        CHECK_FALSE(cell.critical);
        CHECK(std::abs(cell.flux - expected_flux[i]) <= 1e-12);
        // Flux runs downward from 1 toward 1/2 as the speed grows.
        CHECK(cell.flux < prev);
        CHECK(cell.flux > 0.5804);
        prev = cell.flux;
        // The assigned flux reproduces the target speed.
        CHECK(std::abs(effective_speed(FluxRatio(cell.flux)) -
                       std::abs(cell.target_speed)) <= 1e-12);
        CHECK(std::isfinite(cell.inductance));
    }
}

TEST_CASE("designs beyond the horizon are empty") {
    CHECK_THROWS_AS(design_array(cubic_request(Interval{0.1, 1.0}, 32)),
                    EmptyDesignError);
    CHECK_THROWS_AS(design_array(cubic_request(Interval{-1.2, -1.0}, 0)),
                    EmptyDesignError);
}

TEST_CASE("infeasible cells are kept and flagged, not dropped") {
    const ArrayDesign design =
        design_array(cubic_request(Interval{-1.26, 0.5}, 64));
    REQUIRE(design.cells.size() == 64);
    CHECK(design.feasible_count() < 64);
    CHECK(design.feasible_count() > 0);
    for (const CellDesign& cell : design.cells) {
        if (cell.position > 0.0) {
            CHECK_FALSE(cell.feasible);
            CHECK(std::isnan(cell.flux));
            CHECK(std::isnan(cell.inductance));
        } else {
            CHECK(cell.feasible);
        }
    }
}

TEST_CASE("flat profile designs pin every cell at full flux") {
    DesignRequest request;
    request.profile = SpeedProfile::analytic([](double) { return 1.0; });
    request.window = Interval{0.0, 1.0};
    request.cell_count = 8;
    request.params = reference_params();
    const ArrayDesign design = design_array(request);
    const double l0 = squid_inductance(request.params, FluxRatio(0.0));
    for (const CellDesign& cell : design.cells) {
        CHECK(cell.flux == 1.0);
        CHECK_FALSE(cell.critical);
        CHECK(cell.inductance == l0);
    }

    request.branch_policy = BranchPolicy::ForceCosPositive;
    const ArrayDesign mirrored = design_array(request);
    for (const CellDesign& cell : mirrored.cells) {
        CHECK(cell.flux == 0.0);
        CHECK(cell.inductance == l0);
    }
}

TEST_CASE("margin validation") {
    DesignRequest request = cubic_request(Interval{-1.2, -1.0}, 4);
    request.margin_delta = 0.0;
    CHECK_THROWS_AS(design_array(request), std::invalid_argument);
    request.margin_delta = 0.5;
    CHECK_THROWS_AS(design_array(request), std::invalid_argument);
}

TEST_CASE("critical proximity matches the brute-force count") {
    const ArrayDesign design =
        design_array(cubic_request(Interval{-1.259921, -0.05}, 256));
    CHECK(design.feasible_count() == 256);
    const CriticalProximity proximity = critical_proximity(design, 0.05);
    CHECK(proximity.count == 185);
    CHECK(proximity.fraction == doctest::Approx(185.0 / 256.0).epsilon(1e-15));
    CHECK(proximity.positions.size() == proximity.count);
    // The counted fraction tracks the continuum measure of the near-critical
    // region to within one cell width.
    CHECK(std::abs(proximity.fraction - 0.72305336088677866) <= 1.0 / 256.0);
    // Counted cells sit right of the closed-form threshold.
    for (double x : proximity.positions) {
        CHECK(std::abs(x) < 0.92483744545749212 + design.cell_width);
    }

    CHECK(critical_proximity(design, 1e-10).count == 0);
}

TEST_CASE("flat designs have no near-critical cells") {
    DesignRequest request;
    request.profile = SpeedProfile::analytic([](double) { return 1.0; });
    request.window = Interval{0.0, 1.0};
    request.cell_count = 16;
    request.params = reference_params();
    const CriticalProximity proximity =
        critical_proximity(design_array(request), 0.4);
    CHECK(proximity.count == 0);
    CHECK(proximity.fraction == 0.0);
}

TEST_CASE("safe window for the cubic ramp") {
    const Interval window = safe_window(SpeedProfile::cubic(), 0.1);
    CHECK(std::abs(window.lo + kCbrt2) <= 1e-9);
    CHECK(std::abs(window.hi + 1.0359538113972828) <= 1e-8);
}

TEST_CASE("a near-half margin leaves only a sliver") {
    const Interval window = safe_window(SpeedProfile::cubic(), 0.49);
    CHECK(window.width() > 0.0);
    CHECK(window.width() < 3e-4);
    CHECK(std::abs(window.hi + 1.2598174127547035) <= 1e-8);
}

TEST_CASE("growing the margin never grows the window") {
    const SpeedProfile cubic = SpeedProfile::cubic();
    Interval previous = safe_window(cubic, 0.05);
    for (double delta : {0.1, 0.2, 0.3, 0.4, 0.45}) {
        const Interval current = safe_window(cubic, delta);
        CHECK(current.lo >= previous.lo - 1e-9);
        CHECK(current.hi <= previous.hi + 1e-9);
        previous = current;
    }
}

TEST_CASE("safe window failure modes") {
    const SpeedProfile slow = SpeedProfile::analytic([](double) { return 0.05; });
    CHECK_THROWS_AS(safe_window(slow, 0.1, Interval{0.0, 1.0}),
                    EmptyWindowError);
    CHECK_THROWS_AS(safe_window(slow, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(safe_window(SpeedProfile::cubic(), 0.0),
                    std::invalid_argument);
}

TEST_CASE("figure-one curve anchors, monotonicity, and cross-check") {
    const auto rows = figure1_curve(200);
    REQUIRE(rows.size() == 200);
    CHECK(rows[0].x_over_a == -kCbrt2);
    CHECK(rows[0].flux_pi == doctest::Approx(std::numbers::pi).epsilon(1e-15));
    double prev = rows[0].flux_pi;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Figure1Row& row = rows[i];
        CHECK(row.threshold == std::numbers::pi / 2.0);
        if (i > 0) {
            CHECK(row.flux_pi < prev);
            CHECK(row.x_over_a > rows[i - 1].x_over_a);
            prev = row.flux_pi;
            // Same quantity through the flux-inversion path.
            const double c_sq =
                std::min(1.0, std::pow(row.x_over_a, 6) / 4.0);
            const double f = flux_for_speed(c_sq, Branch::CosNegative).value();
            CHECK(std::abs(row.flux_pi - std::numbers::pi * f) <= 1e-12);
        }
    }
    CHECK(rows.back().x_over_a < 0.0);
    CHECK(rows.back().flux_pi > std::numbers::pi / 2.0);

    CHECK_THROWS_AS(figure1_curve(1), std::invalid_argument);
}

TEST_CASE("the flux at nine tenths of the scale length") {
    // Independent anchor for the inversion: x = -0.9 gives f = 0.54242,
    // which is what a reader of the curve calls "approximately 3/5".
    const double c_sq = std::pow(0.9, 6) / 4.0;
    const double f = flux_for_speed(c_sq, Branch::CosNegative).value();
    CHECK(std::abs(f - 0.54241614810709447) <= 1e-12);
    CHECK(std::abs(f - 0.6) < 0.06);
}
