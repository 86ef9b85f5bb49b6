#pragma once

#include <stdexcept>
#include <string>

namespace kent {

// Bad argument values (dimension mismatch, out-of-range k, ...).
struct domain_error : std::invalid_argument {
    explicit domain_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// A constructed object fails its own invariants (non-commuting generators,
// broken metric table, ...). The message names a witness where possible.
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// The request is well-formed but exceeds a configured limit (exact-solver
// size cap, integer-overflow guard, double-precision floor).
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace kent
