#pragma once

#include <stdexcept>
#include <string>

namespace mcshane {

/// Base of all argument and precondition failures raised by the library.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// The isometry is of the wrong type for the requested operation.
struct ClassificationError : DomainError {
    using DomainError::DomainError;
};

/// Input sits too close to a singular configuration to give a trustworthy value.
struct IllConditionedError : DomainError {
    using DomainError::DomainError;
};

/// A degenerate configuration. `limit` carries the value the formula tends to
/// ("0", "1", "inf", or "indeterminate") when one exists.
struct DegenerateError : DomainError {
    DegenerateError(const std::string& what, std::string limit_tag)
        : DomainError(what), limit(std::move(limit_tag)) {}
    std::string limit;
};

/// Malformed textual input (representation specs, complex literals).
struct ParseError : DomainError {
    using DomainError::DomainError;
};

}  // namespace mcshane
