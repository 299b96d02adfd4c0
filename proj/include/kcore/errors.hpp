#pragma once

#include <stdexcept>
#include <string>

namespace kcore {

// Base class for everything this library throws on purpose.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or out-of-domain input: bad subset keys, bad rational literals,
// games violating v(empty) = 0, orders that are not permutations, and so on.
class input_error : public error {
public:
    using error::error;
};

// A computation was refused because it would exceed a size guard. The caller
// can retry with explicit, larger limits.
class guard_error : public error {
public:
    using error::error;
};

// The input is well formed but lacks a structural property the operation
// needs, e.g. an achievable family that is not a lattice where a top element
// is required.
class structure_error : public error {
public:
    using error::error;
};

// An internal consistency check failed. Always a bug, never a usage problem.
class internal_error : public error {
public:
    using error::error;
};

} // namespace kcore
