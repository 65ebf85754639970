#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace datagarden {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(message), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Input that parsed fine but breaks a semantic rule (unknown value,
/// ungroupable question, mismatched entity sets, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Organic placement gave up before every entity had a spot.
class CapacityError : public Error {
 public:
  CapacityError(std::size_t placed, std::size_t requested)
      : Error("layout capacity exceeded: placed " + std::to_string(placed) +
              " of " + std::to_string(requested) + " entities"),
        placed_(placed),
        requested_(requested) {}

  std::size_t placed() const { return placed_; }
  std::size_t requested() const { return requested_; }

 private:
  std::size_t placed_;
  std::size_t requested_;
};

enum class Severity { kError, kWarning };

inline const char* severity_name(Severity s) {
  return s == Severity::kError ? "ERROR" : "WARNING";
}

/// One validation finding. `subject` is the record id for data findings and
/// the channel for mapping findings; `line` points into the source file when
/// known.
struct Diagnostic {
  Severity level = Severity::kError;
  std::string subject;
  std::string question;
  std::string message;
  std::size_t line = 0;

  bool operator==(const Diagnostic&) const = default;
};

}  // namespace datagarden
