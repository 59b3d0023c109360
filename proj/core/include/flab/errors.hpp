#ifndef FLAB_ERRORS_HPP
#define FLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace flab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid input, configuration, or parameter regime (CLI exit code 2).
class ConfigError : public Error {
public:
    using Error::Error;
};

// A numerical procedure failed to reach its target: subdivision budget
// exhausted, winding did not snap to an integer, no anchor on the grid
// (CLI exit code 3).
class NumericalError : public Error {
public:
    using Error::Error;
};

// A function value vanished on a contour sample; the caller is expected
// to jitter the contour and retry.
class BoundaryZeroError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace flab

#endif
