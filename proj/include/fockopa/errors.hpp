#ifndef FOCKOPA_ERRORS_HPP
#define FOCKOPA_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fockopa {

/// Operand dimensions are incompatible (rows/cols/letter count).
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A requested computation would exceed the configured basis capacity.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A documented precondition of the operation does not hold.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The input is structurally valid but the task is infeasible for it
/// (e.g. contraction similarity requested for outer spectral radius > 1).
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A numerical decision (rank, eigenvalue multiplicity, positivity) fell
/// inside the ambiguity band; carries the borderline values in the message.
struct NumericalDegeneracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Text input rejected; `offset` is the byte position of the failure.
struct ParseError : std::runtime_error {
    std::size_t offset;
    ParseError(const std::string& msg, std::size_t off)
        : std::runtime_error(msg + " (at byte " + std::to_string(off) + ")"), offset(off) {}
};

}  // namespace fockopa

#endif
