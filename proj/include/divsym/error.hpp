#pragma once

/**
 * @file error.hpp
 * @brief Exception taxonomy shared by the library and the CLI.
 *
 * Each class maps onto one CLI exit code (see tools/divsym_cli.cpp).
 */

#include <stdexcept>
#include <string>

namespace divsym {

// Malformed input: unparsable files, wrong schema, out-of-range indices.
class input_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Well-formed input that violates an operation's precondition.
class precondition_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A configured safety cap (permutation count, state count, step count) was hit.
class cap_exceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two computation routes that must agree did not.
class verification_failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message)
{
    if (!condition) throw precondition_error(message);
}

} // namespace divsym
