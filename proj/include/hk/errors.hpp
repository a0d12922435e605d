#pragma once

#include <stdexcept>
#include <string>

namespace hk {

// Thrown on contract violations (chart mismatches, bad gradings, invalid
// substitutions, ...). Check *failures* are reported as values, not thrown.
struct EngineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace hk
