#pragma once

#include <stdexcept>
#include <string>

namespace ymlab {

// Bad user input: config files, CLI arguments, malformed data files.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Algorithmic failure: non-convergence, NaN blow-up, tail bound too large.
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ymlab
