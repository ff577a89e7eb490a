// errors.hpp — exception taxonomy shared across the library

#pragma once

#include <stdexcept>
#include <string>

namespace ssflab {

// Bad shapes, violated preconditions, malformed input. CLI exit code 1.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Conditioning failures, tolerance breaches, paths hitting forbidden spectra.
// CLI exit code 2.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ssflab
