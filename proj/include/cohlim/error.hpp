#pragma once

#include <stdexcept>
#include <string>

namespace cohlim {

/// Input outside the domain of an operation (bad chart coordinate, J <= 1/2,
/// mismatched representations, unknown names). The CLI maps it to exit 2.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The requested coherent state does not fit the basis cutoff within the
/// tail tolerance.
class TruncationError : public DomainError {
public:
    using DomainError::DomainError;
};

}  // namespace cohlim
