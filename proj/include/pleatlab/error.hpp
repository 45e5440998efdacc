#pragma once

#include <stdexcept>
#include <string>

namespace pleatlab {

// Input violates a precondition (wrong dimension, off-constraint data, ...).
struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of a function.
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Unsupported configuration (step size, dimension range, wall count, ...).
struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A numeric procedure failed: bracketing, constraint drift, inconclusive sign.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace pleatlab
