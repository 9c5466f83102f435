#pragma once

#include <stdexcept>
#include <string>

namespace momentlab {

// Raised when a requested table or transform exceeds a configured cap.
class capacity_error : public std::runtime_error {
public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an internally verified numerical tolerance is violated.
class tolerance_error : public std::runtime_error {
public:
    explicit tolerance_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace momentlab
