#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hopfpath {

// Malformed textual input. position is a byte offset into the parsed string.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at offset " + std::to_string(position)), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Arguments violate a documented precondition (dimension mismatch, label out of range, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Two independent computations of the same quantity disagree. Never expected.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace hopfpath
