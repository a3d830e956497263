#pragma once

#include <stdexcept>

namespace sgc {

// Invalid model or scenario configuration (bad parameter ranges, unknown keys).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Caller misuse of an operation (bad argument combination at call time).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// No feasible solution for an optimization or calibration request.
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace sgc
