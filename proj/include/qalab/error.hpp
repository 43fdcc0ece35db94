#pragma once

#include <stdexcept>
#include <string>

namespace qalab {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad input data (symbol outside an alphabet, malformed word, ...).
struct InputError : Error {
    explicit InputError(const std::string& what) : Error(what) {}
};

// A machine or operator could not be constructed from the given pieces.
struct ConstructionError : Error {
    explicit ConstructionError(const std::string& what) : Error(what) {}
};

// Malformed machine/claim files.
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

} // namespace qalab
