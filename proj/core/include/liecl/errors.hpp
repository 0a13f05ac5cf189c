#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace liecl {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent inputs: backend or dimension mismatches,
/// unknown method names, invalid configuration values.
class InvalidInputError : public Error {
public:
  using Error::Error;
};

/// A size limit was exceeded (basis cap, dense expansion limit).
class CapacityError : public Error {
public:
  using Error::Error;
};

/// Numerical degeneracy detected while updating incremental state.
/// Carries the index of the basis element that triggered it.
class DegeneracyError : public Error {
public:
  DegeneracyError(const std::string& what, std::size_t element_index)
      : Error(what), element_index_(element_index) {}

  std::size_t element_index() const { return element_index_; }

private:
  std::size_t element_index_;
};

/// Text parsing failure with 1-based line/column location.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// Cooperative deadline expired inside a long-running computation.
class TimeoutError : public Error {
public:
  using Error::Error;
};

} // namespace liecl
