#pragma once

#include <stdexcept>
#include <string>

namespace calib {

enum class ErrorKind {
    InvalidArgument,  // bad value or contract violation
    Protocol,         // predict/observe called out of order
    Guard,            // refused: work limit exceeded (e.g. exact CalDist round guard)
    Parse,            // malformed input text
    Overflow,         // 64-bit rational arithmetic overflowed
    Invariant,        // internal invariant breached (corrupted state)
    Io,               // file read/write failure
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

}  // namespace calib
