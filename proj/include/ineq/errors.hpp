#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ineq {

/// Base class for all errors thrown by this library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or unusable input data (empty sets, bad counts, negative incomes, ...).
class invalid_input : public error {
 public:
  using error::error;
};

/// Argument or parameter outside its mathematical domain.
class domain_error : public error {
 public:
  using error::error;
};

/// Too few usable data points for a fit.
class insufficient_points : public invalid_input {
 public:
  using invalid_input::invalid_input;
};

/// Fit window is empty or carries no abscissa variation.
class degenerate_window : public invalid_input {
 public:
  using invalid_input::invalid_input;
};

/// Text input that could not be parsed; carries the 1-based line number.
class parse_error : public error {
 public:
  parse_error(std::size_t line, const std::string& reason)
      : error("line " + std::to_string(line) + ": " + reason), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Iterative solver failed to reach its tolerance.
class convergence_error : public error {
 public:
  using error::error;
};

/// The interpolated citation curve has no fixed point in range.
class no_fixed_point : public error {
 public:
  using error::error;
};

/// Internal consistency check failed; indicates a bug, never expected.
class ordering_violation : public error {
 public:
  using error::error;
};

}  // namespace ineq
