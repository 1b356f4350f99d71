#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace prsvd {

/// Violated precondition or infeasible mathematical problem.
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A diagonal of R fell below the rank tolerance of thin_qr.
class RankDeficientError : public std::runtime_error {
public:
  RankDeficientError(const std::string &what, std::size_t column)
      : std::runtime_error(what), column_(column) {}
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t column_;
};

/// An iterative routine failed to meet its tolerance.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string &what, int iterations)
      : std::runtime_error(what), iterations_(iterations) {}
  int iterations() const noexcept { return iterations_; }

private:
  int iterations_;
};

/// A value left the representable double range.
class OverflowError : public std::overflow_error {
public:
  using std::overflow_error::overflow_error;
};

/// Malformed text input (profile files, config files, filter strings).
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string &what, std::size_t line = 0)
      : std::runtime_error(what), line_(line) {}
  /// 1-based line number, 0 when not tied to a line.
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

} // namespace prsvd
