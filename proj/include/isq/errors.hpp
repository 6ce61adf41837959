#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace isq {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised by the text-format reader. `instruction` is the 1-based position of
// the instruction in which the problem was found (1 when the input is empty).
struct ParseError : Error {
    ParseError(std::size_t instruction_pos, const std::string& message)
        : Error("instruction " + std::to_string(instruction_pos) + ": " + message),
          instruction(instruction_pos) {}

    std::size_t instruction;
};

// Raised when operands, parameters, or sequence contents violate a
// generator's or operation's preconditions.
struct ValidationError : Error {
    using Error::Error;
};

// Raised when the executor meets an instruction form it was configured to
// reject (currently: indexed references with the extension disabled).
struct ConfigError : Error {
    using Error::Error;
};

// Raised when the halting decider refuses because its state bound does not
// fit in 64-bit arithmetic. `bound` describes the refused bound.
struct BoundError : Error {
    BoundError(const std::string& bound_desc)
        : Error("state bound too large: " + bound_desc), bound(bound_desc) {}

    std::string bound;
};

} // namespace isq
