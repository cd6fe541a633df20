#pragma once

#include <stdexcept>
#include <string>

namespace stablab {

// All recoverable failures surface as one of these; the CLI maps them to exit codes.
struct malformed_input : std::runtime_error {
    explicit malformed_input(const std::string& what) : std::runtime_error(what) {}
};

struct budget_exceeded : std::runtime_error {
    explicit budget_exceeded(const std::string& what) : std::runtime_error(what) {}
};

struct unsupported_input : std::runtime_error {
    explicit unsupported_input(const std::string& what) : std::runtime_error(what) {}
};

// Internal consistency violation: a postcondition we promise could not be met.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace stablab
