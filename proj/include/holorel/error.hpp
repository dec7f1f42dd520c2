#pragma once

#include <stdexcept>
#include <string>

namespace holorel {

// All domain failures (zero divisors, singular expansion points, missing
// initial conditions, ...) are reported through this type so callers can
// separate them from programming errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace holorel
