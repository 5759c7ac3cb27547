#pragma once

#include <stdexcept>
#include <string>

namespace ccf {

// an image point fell outside every mesh square, so the mesh does not cover the IFS images
struct OutOfDomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// a map image landed below the real axis for an alphabet that promises upper-half images
struct SymmetryViolationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// the interpolation correction 1 - err1 became nonpositive; the mesh is too coarse for this s
struct CorrectionTooLargeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// the iteration settled into a period-two cycle; dominant eigenvalue is not simple in modulus
struct OscillationDetectedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// the spectral radius never crossed 1 over the admissible s range
struct NoBracketError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// a computed eigenvector failed the componentwise dominance check even after nudging s
struct CertificateFailureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ccf
