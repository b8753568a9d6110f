#pragma once

#include <cstddef>
#include <functional>

namespace chronosquid::numerics {

/// Root of f on [lo, hi] by bisection. f(lo) and f(hi) must have opposite
/// signs (an exact zero at either end is returned directly). The bracket is
/// halved until its width drops below xtol.
double bisect_root(const std::function<double(double)>& f, double lo,
                   double hi, double xtol);

/// Transition point of a predicate that differs at the two ends of [lo, hi].
/// Returns the midpoint of the final bracket, which is within xtol of the
/// boundary between the true and false sides.
double bisect_boundary(const std::function<bool(double)>& pred, double lo,
                       double hi, double xtol);

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    std::size_t max_intervals = 1000000;
};

/// Integral of f over [a, b] (a > b allowed, sign flips) by adaptive Simpson
/// quadrature. An interval is accepted when the two-panel refinement agrees
/// with the single panel to the requested tolerance, with the usual
/// fifteenth-fraction error estimate; otherwise it is bisected. Throws
/// DomainError once the interval budget is exhausted, which in practice
/// means the integrand is singular inside the range.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, const QuadratureOptions& opts = {});

}  // namespace chronosquid::numerics
