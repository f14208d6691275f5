#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hubplan {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, std::size_t column, const std::string& what);

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string source_;
  std::size_t line_;
  std::size_t column_;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

}  // namespace hubplan
