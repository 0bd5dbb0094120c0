#pragma once

#include <stdexcept>
#include <string>

namespace cohpoly {

/// A family parameter lies outside its admissible range, or a formula
/// produced a nonpositive x_n.
class ParameterDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An index runs past the data a caller supplied (explicit lists, rho
/// coefficients, recurrence coefficient tables).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A series was asked to sum outside its disc of convergence.
class DivergenceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or incomplete configuration input.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cohpoly
