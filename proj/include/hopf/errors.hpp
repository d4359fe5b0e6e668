#pragma once

#include <stdexcept>
#include <string>

namespace hopf {

/// Bad user input: malformed spec, violated precondition, rejected curve.
/// Mapped to exit code 1 by the CLI.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// An identity that must hold for correct code failed beyond tolerance.
/// Signals a bug, not bad input. Mapped to exit code 2 by the CLI.
class InternalConsistencyError : public std::runtime_error {
public:
    explicit InternalConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hopf
