// errors.hpp
//
// Error taxonomy shared across the library. The CLI maps these to distinct
// exit codes (precondition = 2, undecided = 3, I/O = 4).

#pragma once

#include <stdexcept>
#include <string>

namespace mertens {

struct PreconditionError : std::invalid_argument {
    explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

struct ParseError : std::runtime_error {
    long line;
    ParseError(const std::string& what, long line_no)
        : std::runtime_error(what + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
};

// A computation whose bracket straddles its decision threshold, or that is
// missing required input data.
struct UndecidedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace mertens
