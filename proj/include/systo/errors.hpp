#pragma once

#include <stdexcept>

namespace systo {

/// Malformed user input: bad generator indices, invalid simplices, bad flags.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The Coxeter system fails the hypotheses a construction requires.
struct EligibilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Enumeration exceeded the configured node budget.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace systo
