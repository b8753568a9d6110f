#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "chronosquid/errors.hpp"

namespace chronosquid {

/// Closed position interval [lo, hi] in units of the profile length scale.
struct Interval {
    double lo;
    double hi;

    double width() const { return hi - lo; }
};

/// One sample (x_hat, c_tilde) of a tabulated speed profile.
struct TabulatedSample {
    double position;
    double speed;
};

/// Signed metric function c_tilde(x_hat) of the static 1+1D line element
///
///     ds^2 = -c(x)^2 dt^2 + dx^2,
///
/// with positions in units of the length scale a and speeds in units of the
/// background propagation speed. Immutable value type.
class SpeedProfile {
public:
    enum class Kind { Cubic, Tabulated, Analytic };

    /// Default-constructs the cubic ramp with unit scale.
    SpeedProfile() = default;

    /// The cubic ramp c_tilde(x_hat) = -x_hat^3 / 2. scale_a records the
    /// physical length (meters) that one unit of x_hat corresponds to; it
    /// does not affect any dimensionless result.
    static SpeedProfile cubic(double scale_a = 1.0);

    /// Piecewise-linear profile through the given samples, whose positions
    /// must be strictly increasing. Queries outside the sampled range throw
    /// OutOfDomainError.
    static SpeedProfile tabulated(std::vector<TabulatedSample> samples);

    /// Arbitrary deterministic evaluator x_hat -> signed c_tilde.
    static SpeedProfile analytic(std::function<double(double)> evaluator);

    Kind kind() const { return kind_; }

    /// Physical length of one x_hat unit; only cubic profiles carry one.
    double scale_a() const;

    const std::vector<TabulatedSample>& samples() const;

    /// Signed speed at x_hat; same as metric_speed(*this, x_hat).
    double operator()(double x_hat) const;

private:
    Kind kind_ = Kind::Cubic;
    double scale_a_ = 1.0;
    std::vector<TabulatedSample> samples_;
    std::function<double(double)> evaluator_;
};

/// Travel-time summary of a null geodesic bounced between two positions.
struct TripReport {
    double x1;
    double x2;
    double one_way_time;     ///< units a over background speed
    double round_trip_time;  ///< exactly twice one_way_time
    bool causal;             ///< round_trip_time > 0
    enum class Method { ClosedForm, Quadrature } method;
};

/// Signed metric function at x_hat.
double metric_speed(const SpeedProfile& profile, double x_hat);

/// Closed-form coordinate-time antiderivative 1/x_hat^2 for the cubic
/// profile. Throws HorizonSingularityError at x_hat = 0.
double coordinate_time_cubic(double x_hat);

/// Coordinate time of a null geodesic from x1 to x2, that is the integral
/// of 1 / c_tilde over [x1, x2] by adaptive quadrature. Antisymmetric in
/// its endpoints and additive over subdivision points. Before integrating,
/// the interval is scanned for zeros or sign changes of c_tilde; any hit
/// throws HorizonInPathError carrying the located zero.
double elapsed_time(const SpeedProfile& profile, double x1, double x2);

/// One-way and round-trip times between x1 and x2. For the cubic profile
/// the closed form 2 (1/x2^2 - 1/x1^2) is reported and cross-checked
/// against quadrature to 1e-8 relative; other profiles report quadrature.
TripReport round_trip_time(const SpeedProfile& profile, double x1, double x2);

/// All zeros of c_tilde inside the window, found by a sign-change scan over
/// a uniform grid followed by bisection to 1e-12. Zeros landing exactly on
/// grid nodes are taken as-is. Sorted ascending.
std::vector<double> find_horizons(const SpeedProfile& profile, Interval window,
                                  std::size_t grid_points = 257);

/// One horizon-free piece of a window.
struct RegionReport {
    Interval window;
    int speed_sign;      ///< sign of c_tilde inside the piece
    int time_direction;  ///< sign of 1/c_tilde: +1 when right movers advance
                         ///< coordinate time, -1 when they rewind it
};

/// Partition of the window at the horizons of the profile, with the sign of
/// the metric speed and the induced time direction in each piece.
std::vector<RegionReport> classify_regions(const SpeedProfile& profile,
                                           Interval window);

}  // namespace chronosquid
