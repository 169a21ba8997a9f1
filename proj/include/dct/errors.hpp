#pragma once

#include <stdexcept>
#include <string>

namespace dct {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An alias node survived into an operation that requires de-aliased input.
struct UnresolvedAliasError : Error {
    explicit UnresolvedAliasError(const std::string& name)
        : Error("unresolved alias: " + name) {}
};

// A typedef chain loops back on itself.
struct AliasCycleError : Error {
    explicit AliasCycleError(const std::string& name)
        : Error("typedef alias cycle through: " + name) {}
};

struct UnknownTypeNameError : Error {
    explicit UnknownTypeNameError(const std::string& name)
        : Error("unknown type name: " + name) {}
};

struct ParseError : Error {
    int line;
    int column;
    ParseError(const std::string& msg, int line_, int column_)
        : Error(msg + " at " + std::to_string(line_) + ":" + std::to_string(column_)),
          line(line_), column(column_) {}
};

// Construct is outside the supported C subset (goto, inline asm, ...).
// Attached to the offending function, never a unit failure.
struct UnsupportedConstructError : ParseError {
    using ParseError::ParseError;
};

}  // namespace dct
