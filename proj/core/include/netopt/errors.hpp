#ifndef NETOPT_ERRORS_HPP
#define NETOPT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace netopt {

/// Base class for all domain errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input: bad sizes, duplicate edges, self-loops, invalid sets.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what) {}
};

/// The gain matrix has spectral radius at or above the stability margin.
class InstabilityError : public Error {
public:
    explicit InstabilityError(const std::string& what) : Error(what) {}
};

/// A closed-form expression was evaluated at a structurally degenerate
/// parameter point (a required gain is zero or a denominator vanishes).
class DegenerateParameterError : public Error {
public:
    explicit DegenerateParameterError(const std::string& what) : Error(what) {}
};

} // namespace netopt

#endif
