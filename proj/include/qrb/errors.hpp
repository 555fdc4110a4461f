#pragma once

#include <stdexcept>
#include <string>

namespace qrb {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedDimension : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct NotTracePreserving : Error { using Error::Error; };
struct NotCPTP : Error { using Error::Error; };
struct InvalidProbability : Error { using Error::Error; };
struct ZeroAxis : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };
struct ModelTableIncomplete : Error { using Error::Error; };
struct NotUnitaryResidual : Error { using Error::Error; };
struct NotUnitary : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct ClosureOverflow : Error { using Error::Error; };
struct EigSolverFailure : Error { using Error::Error; };
struct DegenerateNoise : Error { using Error::Error; };
struct FormulaPreconditionViolated : Error { using Error::Error; };
struct TaylorIllConditioned : Error { using Error::Error; };
struct DecompositionGateFailed : Error { using Error::Error; };
struct ConfigParseError : Error { using Error::Error; };

} // namespace qrb
