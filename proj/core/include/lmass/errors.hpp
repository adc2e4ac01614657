#pragma once

#include <stdexcept>
#include <string>

namespace lmass {

// Bad user input or violated precondition. The CLI maps this to exit code 2.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A desk-scale size guard was hit. The CLI maps this to exit code 3.
struct GuardExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// All stored digits of a nonzero element vanished, so its valuation is unknown.
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace lmass
