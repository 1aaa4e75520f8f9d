#pragma once

#include <stdexcept>
#include <string>

namespace poincare {

// Base class for all failures raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Arithmetic on invalid operands (e.g. division by an interval containing 0).
struct DomainError : Error {
    using Error::Error;
};

// An intersection that must be nonempty came out empty.  Where rigorous
// enclosures of the same set are intersected this indicates an internal
// inconsistency and the computation must abort.
struct EmptyIntersection : Error {
    using Error::Error;
};

// Verified matrix inversion failed (singular or too ill-conditioned).
struct SingularMatrix : Error {
    using Error::Error;
};

// Integration blew up: endpoints overflowed or the step shrank below the
// configured minimum.
struct Divergence : Error {
    using Error::Error;
};

// A single integration step could not be validated at the current step size;
// the caller is expected to retry with a smaller step.
struct StepRejected : Error {
    using Error::Error;
};

// No section crossing found before the configured maximum return time.
struct NoCrossing : Error {
    using Error::Error;
};

// Transversality of the flow with the section could not be verified.
struct TangencyRisk : Error {
    using Error::Error;
};

// The sign of the section function could not be resolved on some segment
// even after subdivision.
struct SignAmbiguous : Error {
    using Error::Error;
};

// A coordinate strategy required real eigenvalues but found a complex pair.
struct ComplexEigenvalues : Error {
    using Error::Error;
};

// lambda = 1 is not a simple eigenvalue of the monodromy matrix.
struct DegenerateMultiplier : Error {
    using Error::Error;
};

// Operation defined only for affine sections was called on a general one.
struct UnsupportedSection : Error {
    using Error::Error;
};

}  // namespace poincare
