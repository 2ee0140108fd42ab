/*
Shared error types and small bit utilities.
*/

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace polar {

// Caller handed us something that violates a precondition.
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Inputs are individually valid but cannot be combined into a design
// (alphabet mismatch, source smaller than target alphabet, ...).
struct DesignError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using BitVec = std::vector<std::uint8_t>;

inline bool is_pow2(int x) { return x > 0 && (x & (x - 1)) == 0; }

inline int ilog2(int x)
{
    int n = 0;
    while ((1 << n) < x)
        ++n;
    return n;
}

} // namespace polar
