#pragma once

#include "chronosquid/errors.hpp"

namespace chronosquid {

/// Magnetic flux quantum h/(2e) in webers.
inline constexpr double kFluxQuantum = 2.067833848e-15;

/// Relative tolerance used when deciding that a flux sits on the critical
/// point f = 1/2, where the inductance diverges.
inline constexpr double kCriticalFluxTolerance = 1e-12;

/// Default floor on |cos(pi f)| below which the inductance is reported as
/// infinite rather than as an astronomically large finite number.
inline constexpr double kDefaultCosFloor = 1e-9;

/// Physical constants of one dc-SQUID cell of the transmission line.
struct SquidParams {
    double critical_current;  ///< junction critical current I_c, amperes
    double cell_capacitance;  ///< capacitance to ground C_s, farads
    double cell_length;       ///< physical cell pitch, meters
    double flux_quantum = kFluxQuantum;  ///< webers

    /// Throws std::invalid_argument unless every member is finite and
    /// positive.
    void validate() const;
};

/// Dimensionless external flux f = phi_ext / phi_0 restricted to the
/// principal window [0, 1]. Fluxes outside the window are rejected rather
/// than folded, so callers stay explicit about which lobe they are on.
class FluxRatio {
public:
    /// Throws DomainError when value is not a finite number in [0, 1].
    explicit FluxRatio(double value);

    double value() const { return value_; }

private:
    double value_;
};

/// Sign of cos(pi f). Squaring the speed-flux relation loses this sign, so
/// every inversion has to be told which branch it is undoing.
enum class Branch { CosPositive, CosNegative };

/// Treatment of the junction phase: cos(psi) enters the inductance as a
/// constant, 1 in the small-signal limit.
struct PhaseAssumption {
    double cos_psi = 1.0;

    /// Throws std::invalid_argument unless cos_psi is in (0, 1].
    void validate() const;
};

/// |cos(pi f)| computed by reducing the argument to min(f, 1 - f) before
/// the single cosine call. Whenever 1 - f is representable (always for
/// f >= 1/2), f and 1 - f give bit-identical results.
double abs_cos_pi(double flux_ratio);

/// Branch of the cosine at flux f: CosPositive for f < 1/2, CosNegative for
/// f > 1/2. Throws CriticalFluxError within kCriticalFluxTolerance of 1/2.
Branch branch_of(FluxRatio f);

/// Flux-tuned cell inductance
///
///     L_s(f) = phi_0 / (4 pi I_c |cos(pi f)| cos(psi)).
///
/// Returns +infinity once |cos(pi f)| falls below cos_floor; throws
/// CriticalFluxError when f is within kCriticalFluxTolerance of 1/2.
double squid_inductance(const SquidParams& params, FluxRatio f,
                        PhaseAssumption phase = {},
                        double cos_floor = kDefaultCosFloor);

/// Zero-flux propagation speed of the loaded line,
///
///     c_0 = epsilon * sqrt(4 pi I_c / (phi_0 C_s)),
///
/// in meters per second, with epsilon the cell pitch.
double base_speed(const SquidParams& params);

/// Dimensionless speed at flux f relative to the zero-flux speed,
///
///     c~(f) = sqrt(|cos(pi f)|),
///
/// always in [0, 1]. Symmetric under f -> 1 - f, bit-exactly so whenever
/// the complement is representable.
double effective_speed(FluxRatio f);

/// Dimensionless speed when a static bias f_dc carries part of the total
/// flux: c~ = sqrt(|cos(pi f_total)| / |cos(pi f_dc)|). The speed is
/// measured relative to the biased line, so it may exceed 1 when the total
/// flux is closer to an integer than the bias is. Throws CriticalFluxError
/// when |cos(pi f_dc)| is below cos_floor.
double speed_with_dc(FluxRatio f_dc, FluxRatio f_total,
                     double cos_floor = kDefaultCosFloor);

/// Inverse of effective_speed for a squared target speed:
///
///     f = arccos(+-c~^2) / pi
///
/// with the sign picked by the branch (CosPositive lands in [0, 1/2),
/// CosNegative in (1/2, 1]). Throws DomainError when c_tilde_sq is outside
/// [0, 1].
FluxRatio flux_for_speed(double c_tilde_sq, Branch branch);

/// Signal flux on top of a static bias needed to reach a squared target
/// speed relative to the biased line:
///
///     f_ac = arccos(+-|cos(pi f_dc)| c~^2) / pi - f_dc.
///
/// Returned as a plain offset because it is negative whenever the target is
/// faster than the biased line. Throws DomainError when the cosine argument
/// leaves [-1, 1] and CriticalFluxError when the bias itself is critical.
double ac_flux_for_speed(FluxRatio f_dc, double c_tilde_sq, Branch branch,
                         double cos_floor = kDefaultCosFloor);

}  // namespace chronosquid
