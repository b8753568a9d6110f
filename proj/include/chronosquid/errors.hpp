#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chronosquid {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// External flux at (or numerically indistinguishable from) half a flux
/// quantum, where the cell inductance diverges.
struct CriticalFluxError : Error {
    using Error::Error;
};

/// A requested value lies outside the invertible or representable range.
struct DomainError : Error {
    using Error::Error;
};

/// Position query outside the sampled range of a tabulated profile.
struct OutOfDomainError : Error {
    using Error::Error;
};

/// Closed-form travel time evaluated exactly on the horizon.
struct HorizonSingularityError : Error {
    using Error::Error;
};

/// A zero of the propagation speed lies strictly inside an integration
/// interval, so the coordinate time diverges.
struct HorizonInPathError : Error {
    HorizonInPathError(const std::string& what, double position)
        : Error(what), horizon_position(position) {}

    double horizon_position;
};

/// Zero cells requested, or no feasible cell in the design.
struct EmptyDesignError : Error {
    using Error::Error;
};

/// A window constraint admits no interval.
struct EmptyWindowError : Error {
    using Error::Error;
};

/// Cells whose required inductance exceeds the hardware cap.
struct CriticalCellError : Error {
    CriticalCellError(const std::string& what, std::vector<std::size_t> cells)
        : Error(what), cell_indices(std::move(cells)) {}

    std::vector<std::size_t> cell_indices;
};

/// Field magnitudes left the physically plausible range during stepping.
struct NumericalBlowupError : Error {
    using Error::Error;
};

/// The receive probe never registered usable signal energy.
struct NoArrivalError : Error {
    using Error::Error;
};

}  // namespace chronosquid
