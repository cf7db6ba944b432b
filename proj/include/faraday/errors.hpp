#pragma once

#include <stdexcept>
#include <string>

namespace faraday {

// Malformed input text (atom config files, grid specs).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally well-formed input that violates a physical invariant.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Detuning too close to a hyperfine resonance.
class PoleError : public std::domain_error {
public:
    PoleError(const std::string& what, double detuning_mhz, std::string level)
        : std::domain_error(what), detuning_mhz(detuning_mhz), level(std::move(level)) {}
    double detuning_mhz;
    std::string level; // label of the offending excited level
};

// Constraint solving failed (e.g. no coupling satisfies the memory condition).
class NoSolutionError : public std::runtime_error {
public:
    explicit NoSolutionError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace faraday
