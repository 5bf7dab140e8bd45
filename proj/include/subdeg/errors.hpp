#pragma once

#include <stdexcept>
#include <string>

namespace subdeg {

// exit code 2
struct usage_error : std::runtime_error {
    explicit usage_error(const std::string& m) : std::runtime_error(m) {}
};

// exit code 3
struct cap_error : std::runtime_error {
    explicit cap_error(const std::string& m) : std::runtime_error(m) {}
};

// exit code 1
struct violation_error : std::runtime_error {
    explicit violation_error(const std::string& m) : std::runtime_error(m) {}
};

} // namespace subdeg
