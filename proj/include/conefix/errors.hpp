#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace conefix {

/// Base class for all conefix errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed expression or problem file; carries the offending position.
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position(position) {}
    std::size_t position;
};

/// Runtime evaluation failure (division guard, non-finite result, unbound variable).
struct EvalError : Error {
    using Error::Error;
};

inline void require(bool condition, const std::string& message) {
    if (!condition) throw Error(message);
}

}  // namespace conefix
