#pragma once

#include <stdexcept>
#include <string>

namespace zenolink {

// Instability, failed calibration, or other numerical breakdown.
// The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace zenolink
