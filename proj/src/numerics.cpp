#include "chronosquid/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chronosquid/errors.hpp"

namespace chronosquid::numerics {

double bisect_root(const std::function<double(double)>& f, double lo,
                   double hi, double xtol) {
    if (!(xtol > 0.0)) {
        throw std::invalid_argument("bisect_root: xtol must be positive");
    }
    if (!(lo < hi)) {
        throw std::invalid_argument("bisect_root: need lo < hi");
    }
    double flo = f(lo);
    if (flo == 0.0) return lo;
    double fhi = f(hi);
    if (fhi == 0.0) return hi;
    if (std::signbit(flo) == std::signbit(fhi)) {
        throw std::invalid_argument("bisect_root: endpoints do not bracket a root");
    }
    while (hi - lo > xtol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket at floating-point resolution
        const double fmid = f(mid);
        if (fmid == 0.0) return mid;
        if (std::signbit(fmid) == std::signbit(flo)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double bisect_boundary(const std::function<bool(double)>& pred, double lo,
                       double hi, double xtol) {
    if (!(xtol > 0.0)) {
        throw std::invalid_argument("bisect_boundary: xtol must be positive");
    }
    if (!(lo < hi)) {
        throw std::invalid_argument("bisect_boundary: need lo < hi");
    }
    const bool state_lo = pred(lo);
    if (pred(hi) == state_lo) {
        throw std::invalid_argument("bisect_boundary: predicate equal at both ends");
    }
    while (hi - lo > xtol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (pred(mid) == state_lo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

namespace {

struct SimpsonWorkspace {
    const std::function<double(double)>& f;
    double abs_tol;
    double rel_tol;
    std::size_t intervals_left;

    double recurse(double a, double b, double fa, double fm, double fb,
                   double whole) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = f(lm);
        const double frm = f(rm);
        const double h = b - a;
        const double left = (h / 12.0) * (fa + 4.0 * flm + fm);
        const double right = (h / 12.0) * (fm + 4.0 * frm + fb);
        const double refined = left + right;
        const double err = (refined - whole) / 15.0;
        const double tol =
            std::max(abs_tol, rel_tol * std::abs(refined));
        if (std::abs(err) <= tol || lm <= a || rm >= b) {
            return refined + err;
        }
        if (intervals_left < 2) {
            throw DomainError(
                "adaptive_simpson: interval budget exhausted; the integrand "
                "appears singular inside the range");
        }
        intervals_left -= 2;
        return recurse(a, m, fa, flm, fm, left) +
               recurse(m, b, fm, frm, fb, right);
    }
};

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, const QuadratureOptions& opts) {
    if (a == b) return 0.0;
    if (a > b) return -adaptive_simpson(f, b, a, opts);
    SimpsonWorkspace ws{f, opts.abs_tol, opts.rel_tol, opts.max_intervals};
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
    return ws.recurse(a, b, fa, fm, fb, whole);
}

}  // namespace chronosquid::numerics
