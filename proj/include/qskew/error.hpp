#pragma once

#include <stdexcept>
#include <string>

namespace qskew {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Arithmetic between a rational and a float64 value.
class ModeMismatch : public Error {
public:
    using Error::Error;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

// Malformed or inconsistent input data (bad JSON, out-of-range indices, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// A mathematical hypothesis of an operation does not hold. `condition`
// carries the index of the violated condition when there is one, else 0.
class PreconditionError : public Error {
public:
    PreconditionError(const std::string& what, int condition = 0)
        : Error(what), condition_(condition) {}
    int condition() const { return condition_; }

private:
    int condition_;
};

} // namespace qskew
