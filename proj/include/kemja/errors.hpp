#pragma once

#include <stdexcept>
#include <string>

namespace kemja {

struct InvalidInstance : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AgendaMismatch : std::runtime_error {
    AgendaMismatch() : std::runtime_error("judgment sets are over different agendas") {}
};

// The requested enumeration would exceed its cap; use the oracle engine.
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// No consistent judgment set exists, so the rule has nothing to return.
struct Infeasible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace kemja
