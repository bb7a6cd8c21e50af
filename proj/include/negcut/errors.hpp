#pragma once

#include <stdexcept>
#include <string>

namespace negcut {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller violated a precondition (bad size, out-of-range parameter, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class ImageError : public Error {
public:
    enum class Kind { Unreadable, MalformedHeader, UnsupportedMaxval, Truncated, WriteFailed };

    ImageError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

// A weight oracle produced NaN/Inf, or the solver broke down.
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace negcut
