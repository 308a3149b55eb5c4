#pragma once

#include <stdexcept>
#include <string>

namespace k3 {

// Rejected user input: bad schema, non-prime place, degenerate form, ...
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A computation that should not fail did (e.g. factorization gave up).
struct InternalError : std::runtime_error {
    explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace k3
