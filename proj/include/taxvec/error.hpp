#pragma once

#include <stdexcept>
#include <string>

namespace taxvec {

// Thrown for malformed input data, broken invariants and failed I/O.
// The CLI maps it to exit code 2; usage problems are handled before
// library calls and exit with 1.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace taxvec
