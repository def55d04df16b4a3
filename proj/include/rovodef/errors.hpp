#pragma once

#include <stdexcept>
#include <string>

namespace rovodef {

// Raised for invalid configuration input (bad files, malformed keys,
// out-of-range settings). CLI maps this to exit code 2.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a physics precondition is violated (resonant laser, unbound
// vibrational index, invalid quantum numbers). CLI maps this to exit code 3.
class physics_error : public std::runtime_error {
public:
    explicit physics_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace rovodef
