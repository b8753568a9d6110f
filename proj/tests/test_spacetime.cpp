#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "chronosquid/spacetime.hpp"

using namespace chronosquid;

namespace {

constexpr double kCbrt2 = 1.2599210498948732;

SpeedProfile linear_ramp() {
    // c(x) = 0.5 + x/2 on [0, 2]; integral of 1/c over [0, 2] is 2 ln 3.
    return SpeedProfile::tabulated(
        {TabulatedSample{0.0, 0.5}, TabulatedSample{2.0, 1.5}});
}

}  // namespace

TEST_CASE("cubic profile evaluates the ramp exactly") {
    const SpeedProfile cubic = SpeedProfile::cubic();
    CHECK(metric_speed(cubic, -1.0) == 0.5);
    CHECK(metric_speed(cubic, 0.0) == 0.0);
    CHECK(metric_speed(cubic, 2.0) == -4.0);
    CHECK(metric_speed(cubic, -kCbrt2) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("profile constructors reject malformed input") {
    CHECK_THROWS_AS(SpeedProfile::cubic(0.0), std::invalid_argument);
    CHECK_THROWS_AS(SpeedProfile::cubic(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(SpeedProfile::tabulated({TabulatedSample{0.0, 1.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        SpeedProfile::tabulated(
            {TabulatedSample{0.0, 1.0}, TabulatedSample{0.0, 2.0}}),
        std::invalid_argument);
    CHECK_THROWS_AS(SpeedProfile::analytic({}), std::invalid_argument);
}

TEST_CASE("tabulated profile interpolates linearly and guards its range") {
    const SpeedProfile ramp = linear_ramp();
    CHECK(metric_speed(ramp, 0.0) == 0.5);
    CHECK(metric_speed(ramp, 2.0) == 1.5);
    CHECK(metric_speed(ramp, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(metric_speed(ramp, 0.5) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK_THROWS_AS(metric_speed(ramp, -0.1), OutOfDomainError);
    CHECK_THROWS_AS(metric_speed(ramp, 2.1), OutOfDomainError);
}

TEST_CASE("closed-form coordinate time for the cubic ramp") {
    CHECK(coordinate_time_cubic(-1.0) == 1.0);
    CHECK(coordinate_time_cubic(-2.0) == 0.25);
    CHECK(coordinate_time_cubic(0.5) == 4.0);
    CHECK_THROWS_AS(coordinate_time_cubic(0.0), HorizonSingularityError);
}

TEST_CASE("elapsed time agrees with the cubic closed form") {
    const SpeedProfile cubic = SpeedProfile::cubic();
    const double t = elapsed_time(cubic, -kCbrt2, -1.0);
    CHECK(t == doctest::Approx(0.37003947505256342).epsilon(1e-8));
    CHECK(elapsed_time(cubic, -0.7, -0.7) == 0.0);
}

TEST_CASE("elapsed time integrates a tabulated ramp to the log formula") {
    CHECK(elapsed_time(linear_ramp(), 0.0, 2.0) ==
          doctest::Approx(2.0 * std::log(3.0)).epsilon(1e-9));
}

TEST_CASE("elapsed time on an analytic profile, including negative speeds") {
    const SpeedProfile flat = SpeedProfile::analytic([](double) { return 1.0; });
    CHECK(elapsed_time(flat, 0.0, 2.0) == doctest::Approx(2.0).epsilon(1e-12));
    const SpeedProfile backwards =
        SpeedProfile::analytic([](double) { return -1.0; });
    CHECK(elapsed_time(backwards, 0.0, 2.0) ==
          doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("a horizon inside the interval aborts the integration") {
    const SpeedProfile cubic = SpeedProfile::cubic();
    CHECK_THROWS_AS(elapsed_time(cubic, -1.0, 0.5), HorizonInPathError);
    try {
        elapsed_time(cubic, -1.0, 0.5);
    } catch (const HorizonInPathError& e) {
        CHECK(std::abs(e.horizon_position) <= 1e-9);
    }
    // The guard covers the closed interval, so an endpoint on the horizon
    // also counts.
    CHECK_THROWS_AS(elapsed_time(cubic, 0.0, 1.0), HorizonInPathError);
}

TEST_CASE("elapsed time is antisymmetric and additive") {
    const SpeedProfile cubic = SpeedProfile::cubic();
    const std::vector<std::pair<double, double>> pairs = {
        {-2.0, -1.0}, {-1.5, -0.4}, {-3.0, -0.25}, {-0.9, -0.3}};
    for (const auto& [a, b] : pairs) {
        const double forward = elapsed_time(cubic, a, b);
        const double backward = elapsed_time(cubic, b, a);
        CHECK(std::abs(forward + backward) <= 1e-12);
    }
    const double t_full = elapsed_time(cubic, -2.0, -0.5);
    const double t_split =
        elapsed_time(cubic, -2.0, -1.1) + elapsed_time(cubic, -1.1, -0.5);
    CHECK(std::abs(t_full - t_split) <= 1e-9 * std::abs(t_full));
}

TEST_CASE("elapsed time is positive where the speed is positive") {
    const SpeedProfile cubic = SpeedProfile::cubic();
    for (double a : {-3.0, -2.0, -1.3, -0.8}) {
        CHECK(elapsed_time(cubic, a, a + 0.3) > 0.0);
    }
}

TEST_CASE("quadrature matches the closed form on random intervals") {
    std::mt19937 rng(20240811u);
    std::uniform_real_distribution<double> pos(-3.0, -0.2);
    const SpeedProfile cubic = SpeedProfile::cubic();
    for (int i = 0; i < 20; ++i) {
        double a = pos(rng);
        double b = pos(rng);
        if (std::abs(a - b) < 1e-3) continue;
        const double quad = elapsed_time(cubic, a, b);
        const double closed =
            coordinate_time_cubic(b) - coordinate_time_cubic(a);
        CHECK(std::abs(quad - closed) <= 1e-8 * std::abs(closed));
    }
}

TEST_CASE("round trip doubles the one-way time and reports the method") {
    const SpeedProfile cubic = SpeedProfile::cubic();
    const TripReport near = round_trip_time(cubic, -1.2, -1.0);
    CHECK(near.round_trip_time == doctest::Approx(11.0 / 18.0).epsilon(1e-12));
    CHECK(near.round_trip_time == 2.0 * near.one_way_time);
    CHECK(near.causal);
    CHECK(near.method == TripReport::Method::ClosedForm);

    const TripReport far = round_trip_time(cubic, -2.0, -1.0);
    CHECK(far.round_trip_time == doctest::Approx(1.5).epsilon(1e-12));

    const TripReport degenerate = round_trip_time(cubic, -1.0, -1.0);
    CHECK(degenerate.round_trip_time == 0.0);

    const TripReport tabulated = round_trip_time(linear_ramp(), 0.0, 2.0);
    CHECK(tabulated.method == TripReport::Method::Quadrature);
    CHECK(tabulated.round_trip_time ==
          doctest::Approx(4.0 * std::log(3.0)).epsilon(1e-9));
    CHECK(tabulated.causal);

    // With a negative speed throughout, the computed round trip is negative
    // and the trip is flagged non-causal.
    const SpeedProfile backwards =
        SpeedProfile::analytic([](double) { return -0.5; });
    const TripReport reversed = round_trip_time(backwards, 0.0, 1.0);
    CHECK(reversed.round_trip_time == doctest::Approx(-4.0).epsilon(1e-9));
    CHECK_FALSE(reversed.causal);
}

TEST_CASE("horizon search finds the cubic horizon and nothing else") {
    const SpeedProfile cubic = SpeedProfile::cubic();
    const std::vector<double> zeros =
        find_horizons(cubic, Interval{-2.0, 2.0}, 101);
    REQUIRE(zeros.size() == 1);
    CHECK(std::abs(zeros[0]) <= 1e-12);
    CHECK(find_horizons(cubic, Interval{-2.0, -0.1}).empty());
    const SpeedProfile flat = SpeedProfile::analytic([](double) { return 1.0; });
    CHECK(find_horizons(flat, Interval{-5.0, 5.0}).empty());
}

TEST_CASE("horizon search separates clustered zeros") {
    const SpeedProfile wave = SpeedProfile::analytic(
        [](double x) { return std::sin(std::numbers::pi * x); });
    const std::vector<double> zeros =
        find_horizons(wave, Interval{-2.5, 2.5}, 1001);
    REQUIRE(zeros.size() == 5);
    for (int i = 0; i < 5; ++i) {
        CHECK(std::abs(zeros[i] - (i - 2)) <= 1e-9);
    }
}

TEST_CASE("region classification splits windows at horizons") {
    const SpeedProfile cubic = SpeedProfile::cubic();
    const auto split = classify_regions(cubic, Interval{-1.26, 1.26});
    REQUIRE(split.size() == 2);
    CHECK(split[0].speed_sign == 1);
    CHECK(split[0].time_direction == 1);
    CHECK(split[1].speed_sign == -1);
    CHECK(split[1].time_direction == -1);
    CHECK(std::abs(split[0].window.hi) <= 1e-9);
    CHECK(split[0].window.lo == -1.26);
    CHECK(split[1].window.hi == 1.26);

    const auto left_only = classify_regions(cubic, Interval{-1.26, -0.1});
    REQUIRE(left_only.size() == 1);
    CHECK(left_only[0].speed_sign == 1);

    const SpeedProfile flat = SpeedProfile::analytic([](double) { return 1.0; });
    const auto whole = classify_regions(flat, Interval{0.0, 1.0});
    REQUIRE(whole.size() == 1);
    CHECK(whole[0].speed_sign == 1);

    // A horizon sitting exactly on the window edge must not create an empty
    // region.
    const auto edge = classify_regions(cubic, Interval{0.0, 2.0});
    REQUIRE(edge.size() == 1);
    CHECK(edge[0].speed_sign == -1);
}
