#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace o1p {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text or an invalid edge list. Line and column are
/// 1-based; zero means "not tied to a position".
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(line == 0 ? what
                        : what + " (line " + std::to_string(line) + ", column " +
                              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A reduction or expansion whose local preconditions do not hold.
class FeasibilityError : public Error {
 public:
  using Error::Error;
};

/// A trace that cannot be replayed into a valid embedding.
class CertificateError : public Error {
 public:
  using Error::Error;
};

/// A targeted reduction that found no path to the requested wheel.
class StrategyError : public Error {
 public:
  using Error::Error;
};

/// Broken internal invariant.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace o1p
