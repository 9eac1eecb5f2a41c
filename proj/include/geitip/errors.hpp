#pragma once

#include <stdexcept>
#include <string>

namespace geitip {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A variable was used outside the universe it was declared in.
struct universe_error : error {
    using error::error;
};

// Structural misuse of an operation (solving for an absent variable,
// substituting a variable into itself, ...).
struct domain_error : error {
    using error::error;
};

struct parse_error : error {
    parse_error(std::string msg, int line, int column)
        : error(std::move(msg)), line(line), column(column) {}
    int line;
    int column;
};

// A soundness invariant failed; never raised on well-formed runs.
struct internal_error : error {
    using error::error;
};

}  // namespace geitip
