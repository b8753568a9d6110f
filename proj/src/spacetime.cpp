#include "chronosquid/spacetime.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "chronosquid/numerics.hpp"

namespace chronosquid {

namespace {

constexpr double kHorizonSpeedFloor = 1e-12;
constexpr double kHorizonLocateTol = 1e-12;
constexpr std::size_t kGuardSamples = 256;

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

SpeedProfile SpeedProfile::cubic(double scale_a) {
    if (!(scale_a > 0.0) || !std::isfinite(scale_a)) {
        throw std::invalid_argument("cubic profile needs a positive scale_a");
    }
    SpeedProfile p;
    p.kind_ = Kind::Cubic;
    p.scale_a_ = scale_a;
    return p;
}

SpeedProfile SpeedProfile::tabulated(std::vector<TabulatedSample> samples) {
    if (samples.size() < 2) {
        throw std::invalid_argument("tabulated profile needs at least two samples");
    }
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (!(samples[i - 1].position < samples[i].position)) {
            throw std::invalid_argument(
                "tabulated sample positions must be strictly increasing");
        }
    }
    SpeedProfile p;
    p.kind_ = Kind::Tabulated;
    p.samples_ = std::move(samples);
    return p;
}

SpeedProfile SpeedProfile::analytic(std::function<double(double)> evaluator) {
    if (!evaluator) {
        throw std::invalid_argument("analytic profile needs an evaluator");
    }
    SpeedProfile p;
    p.kind_ = Kind::Analytic;
    p.evaluator_ = std::move(evaluator);
    return p;
}

double SpeedProfile::scale_a() const {
    if (kind_ != Kind::Cubic) {
        throw std::logic_error("scale_a is defined only for cubic profiles");
    }
    return scale_a_;
}

const std::vector<TabulatedSample>& SpeedProfile::samples() const {
    if (kind_ != Kind::Tabulated) {
        throw std::logic_error("samples are defined only for tabulated profiles");
    }
    return samples_;
}

double SpeedProfile::operator()(double x_hat) const {
    switch (kind_) {
        case Kind::Cubic:
            return -(x_hat * x_hat * x_hat) / 2.0;
        case Kind::Tabulated: {
            const auto& s = samples_;
            if (x_hat < s.front().position || x_hat > s.back().position) {
                std::ostringstream msg;
                msg << "position " << x_hat
                    << " outside tabulated range [" << s.front().position
                    << ", " << s.back().position << "]";
                throw OutOfDomainError(msg.str());
            }
            auto it = std::upper_bound(
                s.begin(), s.end(), x_hat,
                [](double x, const TabulatedSample& p) { return x < p.position; });
            if (it == s.begin()) return s.front().speed;
            if (it == s.end()) return s.back().speed;
            const auto& right = *it;
            const auto& left = *(it - 1);
            const double t =
                (x_hat - left.position) / (right.position - left.position);
            return left.speed + t * (right.speed - left.speed);
        }
        case Kind::Analytic:
            return evaluator_(x_hat);
    }
    throw std::logic_error("unreachable profile kind");
}

double metric_speed(const SpeedProfile& profile, double x_hat) {
    return profile(x_hat);
}

double coordinate_time_cubic(double x_hat) {
    if (x_hat == 0.0) {
        throw HorizonSingularityError(
            "coordinate time diverges on the horizon at x = 0");
    }
    return 1.0 / (x_hat * x_hat);
}

namespace {

/// Scans [lo, hi] for a zero or sign change of the profile and throws
/// HorizonInPathError when one is found. Endpoints count: the integrand is
/// already singular there.
void guard_against_horizon(const SpeedProfile& profile, double lo, double hi) {
    const double h = (hi - lo) / static_cast<double>(kGuardSamples + 1);
    double x_prev = lo;
    double c_prev = profile(lo);
    for (std::size_t i = 0; i <= kGuardSamples + 1; ++i) {
        const double x =
            (i == kGuardSamples + 1) ? hi : lo + static_cast<double>(i) * h;
        const double c = profile(x);
        if (std::abs(c) < kHorizonSpeedFloor) {
            std::ostringstream msg;
            msg << "propagation speed vanishes at x = " << x
                << " inside the integration interval";
            throw HorizonInPathError(msg.str(), x);
        }
        if (i > 0 && sign_of(c) != sign_of(c_prev)) {
            const double zero = numerics::bisect_root(
                [&profile](double u) { return profile(u); }, x_prev, x,
                kHorizonLocateTol);
            std::ostringstream msg;
            msg << "propagation speed changes sign at x = " << zero
                << " inside the integration interval";
            throw HorizonInPathError(msg.str(), zero);
        }
        x_prev = x;
        c_prev = c;
    }
}

}  // namespace

double elapsed_time(const SpeedProfile& profile, double x1, double x2) {
    if (x1 == x2) return 0.0;
    guard_against_horizon(profile, std::min(x1, x2), std::max(x1, x2));
    return numerics::adaptive_simpson(
        [&profile](double x) { return 1.0 / profile(x); }, x1, x2);
}

TripReport round_trip_time(const SpeedProfile& profile, double x1, double x2) {
    TripReport report;
    report.x1 = x1;
    report.x2 = x2;
    if (profile.kind() == SpeedProfile::Kind::Cubic && x1 != x2) {
        const double closed =
            coordinate_time_cubic(x2) - coordinate_time_cubic(x1);
        const double quad = elapsed_time(profile, x1, x2);
        if (std::abs(quad - closed) > 1e-8 * std::max(1.0, std::abs(closed))) {
            std::ostringstream msg;
            msg << "quadrature " << quad
                << " disagrees with the closed-form time " << closed;
            throw Error(msg.str());
        }
        report.one_way_time = closed;
        report.method = TripReport::Method::ClosedForm;
    } else {
        report.one_way_time = elapsed_time(profile, x1, x2);
        report.method = profile.kind() == SpeedProfile::Kind::Cubic
                            ? TripReport::Method::ClosedForm
                            : TripReport::Method::Quadrature;
    }
    report.round_trip_time = 2.0 * report.one_way_time;
    report.causal = report.round_trip_time > 0.0;
    return report;
}

std::vector<double> find_horizons(const SpeedProfile& profile, Interval window,
                                  std::size_t grid_points) {
    if (!(window.lo < window.hi)) {
        throw std::invalid_argument("find_horizons: window must be nonempty");
    }
    if (grid_points < 2) {
        throw std::invalid_argument("find_horizons: need at least two grid points");
    }
    const double h =
        (window.hi - window.lo) / static_cast<double>(grid_points - 1);
    std::vector<double> zeros;
    double x_prev = window.lo;
    double c_prev = profile(x_prev);
    if (c_prev == 0.0) zeros.push_back(x_prev);
    for (std::size_t i = 1; i < grid_points; ++i) {
        const double x = (i + 1 == grid_points)
                             ? window.hi
                             : window.lo + static_cast<double>(i) * h;
        const double c = profile(x);
        if (c == 0.0) {
            zeros.push_back(x);
        } else if (c_prev != 0.0 && sign_of(c) != sign_of(c_prev)) {
            zeros.push_back(numerics::bisect_root(
                [&profile](double u) { return profile(u); }, x_prev, x,
                kHorizonLocateTol));
        }
        x_prev = x;
        c_prev = c;
    }
    std::sort(zeros.begin(), zeros.end());
    // Merge duplicates that bisection on neighbouring grid cells can produce.
    std::vector<double> unique;
    for (double z : zeros) {
        if (unique.empty() || z - unique.back() > 10.0 * kHorizonLocateTol) {
            unique.push_back(z);
        }
    }
    return unique;
}

std::vector<RegionReport> classify_regions(const SpeedProfile& profile,
                                           Interval window) {
    const std::vector<double> horizons = find_horizons(profile, window);
    std::vector<double> bounds;
    bounds.push_back(window.lo);
    for (double z : horizons) bounds.push_back(z);
    bounds.push_back(window.hi);
    std::vector<RegionReport> regions;
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        if (!(bounds[i] < bounds[i + 1])) continue;  // horizon on the edge
        const double mid = 0.5 * (bounds[i] + bounds[i + 1]);
        const int s = sign_of(profile(mid));
        regions.push_back(RegionReport{Interval{bounds[i], bounds[i + 1]}, s, s});
    }
    return regions;
}

}  // namespace chronosquid
