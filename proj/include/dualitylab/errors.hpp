#pragma once

#include <stdexcept>
#include <string>

namespace dualitylab {

/// Integrand returned NaN/Inf at a quadrature node.
struct EvaluationError : std::runtime_error {
    explicit EvaluationError(const std::string& what) : std::runtime_error(what) {}
};

/// Root bracket does not straddle a sign change.
struct BadBracket : std::runtime_error {
    explicit BadBracket(const std::string& what) : std::runtime_error(what) {}
};

/// A lattice operation needs more points than were built.
struct TooFewPoints : std::runtime_error {
    explicit TooFewPoints(const std::string& what) : std::runtime_error(what) {}
};

/// Spectral envelope has too few usable maxima in the fitting window.
struct InsufficientEnvelope : std::runtime_error {
    explicit InsufficientEnvelope(const std::string& what) : std::runtime_error(what) {}
};

/// A quadrature or series refinement stalled before reaching tolerance.
struct NonConvergence : std::runtime_error {
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

/// A series needed more terms than the configured cap allows.
struct TruncationCapExceeded : std::runtime_error {
    explicit TruncationCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Artifact file could not be written.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dualitylab
