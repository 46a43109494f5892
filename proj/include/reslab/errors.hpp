#pragma once

#include <stdexcept>
#include <string>

namespace reslab {

// Error classes map onto CLI exit codes: validation 2, numeric 3, io 4.

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Enumeration-based operation asked to run above the N! cap.
class CapacityError : public ValidationError {
public:
    explicit CapacityError(const std::string& msg) : ValidationError(msg) {}
};

class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// A zero sits on (or hugs) an integration contour.
class ContourError : public NumericError {
public:
    explicit ContourError(const std::string& msg) : NumericError(msg) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace reslab
