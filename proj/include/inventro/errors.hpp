#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace inventro {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Safety fixed point converged to the empty set: the target set is not
/// controlled invariant at the current grid resolution.
struct EmptyControllerError : Error {
    explicit EmptyControllerError(int iterations)
        : Error("invariant controller is empty after " + std::to_string(iterations) +
                " fixed-point sweeps"),
          iterations(iterations) {}
    int iterations;
};

/// A configurable resource cap (cell count, oracle nodes, subset states) was hit.
struct CapacityError : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct IndexError : Error {
    using Error::Error;
};

struct IntegrationError : Error {
    using Error::Error;
};

struct UnsupportedOperationError : Error {
    using Error::Error;
};

/// A determinized cell's post box escaped the controller domain. Signals an
/// internal bug: choices must come from the permissible sets.
struct InvarianceViolationError : Error {
    using Error::Error;
};

struct PartitionIntegrityError : Error {
    using Error::Error;
};

/// A simulated closed-loop trajectory left the controller domain, which would
/// falsify controller soundness.
struct SoundnessViolationError : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

}  // namespace inventro
