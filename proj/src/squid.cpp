#include "chronosquid/squid.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace chronosquid {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive_finite(double value, const char* name) {
    if (!std::isfinite(value) || value <= 0.0) {
        std::ostringstream msg;
        msg << name << " must be a positive finite number, got " << value;
        throw std::invalid_argument(msg.str());
    }
}

bool near_critical(double f) {
    return std::abs(f - 0.5) <= kCriticalFluxTolerance;
}

}  // namespace

void SquidParams::validate() const {
    require_positive_finite(critical_current, "critical_current");
    require_positive_finite(cell_capacitance, "cell_capacitance");
    require_positive_finite(cell_length, "cell_length");
    require_positive_finite(flux_quantum, "flux_quantum");
}

void PhaseAssumption::validate() const {
    if (!std::isfinite(cos_psi) || cos_psi <= 0.0 || cos_psi > 1.0) {
        std::ostringstream msg;
        msg << "cos_psi must lie in (0, 1], got " << cos_psi;
        throw std::invalid_argument(msg.str());
    }
}

FluxRatio::FluxRatio(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
        std::ostringstream msg;
        msg << "flux ratio must lie in [0, 1], got " << value;
        throw DomainError(msg.str());
    }
}

double abs_cos_pi(double flux_ratio) {
    // Reducing to the smaller of f and 1 - f keeps the cosine argument in
    // [0, pi/2] and makes the f <-> 1 - f symmetry hold to the last bit:
    // 1 - f is exact in floating point whenever f is in [1/2, 1].
    const double reduced = std::min(flux_ratio, 1.0 - flux_ratio);
    return std::cos(kPi * reduced);
}

Branch branch_of(FluxRatio f) {
    if (near_critical(f.value())) {
        throw CriticalFluxError(
            "flux sits on the critical point f = 1/2 where the cosine "
            "changes sign");
    }
    return f.value() < 0.5 ? Branch::CosPositive : Branch::CosNegative;
}

double squid_inductance(const SquidParams& params, FluxRatio f,
                        PhaseAssumption phase, double cos_floor) {
    params.validate();
    phase.validate();
    if (near_critical(f.value())) {
        std::ostringstream msg;
        msg << "inductance diverges at critical flux f = " << f.value();
        throw CriticalFluxError(msg.str());
    }
    const double cos_mag = abs_cos_pi(f.value());
    if (cos_mag < cos_floor) {
        return std::numeric_limits<double>::infinity();
    }
    return params.flux_quantum /
           (4.0 * kPi * params.critical_current * cos_mag * phase.cos_psi);
}

double base_speed(const SquidParams& params) {
    params.validate();
    return params.cell_length *
           std::sqrt(4.0 * kPi * params.critical_current /
                     (params.flux_quantum * params.cell_capacitance));
}

double effective_speed(FluxRatio f) {
    return std::sqrt(abs_cos_pi(f.value()));
}

double speed_with_dc(FluxRatio f_dc, FluxRatio f_total, double cos_floor) {
    const double cos_dc = abs_cos_pi(f_dc.value());
    if (cos_dc < cos_floor) {
        std::ostringstream msg;
        msg << "dc bias f = " << f_dc.value()
            << " is critical; the biased line has no finite speed scale";
        throw CriticalFluxError(msg.str());
    }
    return std::sqrt(abs_cos_pi(f_total.value()) / cos_dc);
}

FluxRatio flux_for_speed(double c_tilde_sq, Branch branch) {
    if (!(c_tilde_sq >= 0.0 && c_tilde_sq <= 1.0)) {
        std::ostringstream msg;
        msg << "squared speed must lie in [0, 1], got " << c_tilde_sq;
        throw DomainError(msg.str());
    }
    const double principal = std::acos(c_tilde_sq) / kPi;
    // The mirror form 1 - acos(x)/pi, rather than acos(-x)/pi, makes the
    // negative branch the exact reflection of the positive one.
    return FluxRatio(branch == Branch::CosPositive ? principal
                                                   : 1.0 - principal);
}

double ac_flux_for_speed(FluxRatio f_dc, double c_tilde_sq, Branch branch,
                         double cos_floor) {
    if (!(c_tilde_sq >= 0.0)) {
        std::ostringstream msg;
        msg << "squared speed must be non-negative, got " << c_tilde_sq;
        throw DomainError(msg.str());
    }
    const double cos_dc = abs_cos_pi(f_dc.value());
    if (cos_dc < cos_floor) {
        std::ostringstream msg;
        msg << "dc bias f = " << f_dc.value()
            << " is critical; no signal flux can reach the target speed";
        throw CriticalFluxError(msg.str());
    }
    const double cos_total = cos_dc * c_tilde_sq;
    if (cos_total > 1.0) {
        std::ostringstream msg;
        msg << "target speed " << std::sqrt(c_tilde_sq)
            << " is unreachable from dc bias " << f_dc.value()
            << ": required |cos| = " << cos_total << " exceeds 1";
        throw DomainError(msg.str());
    }
    const double principal = std::acos(cos_total) / kPi;
    const double f_total =
        branch == Branch::CosPositive ? principal : 1.0 - principal;
    return f_total - f_dc.value();
}

}  // namespace chronosquid
