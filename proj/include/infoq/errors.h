#ifndef INFOQ_ERRORS_H
#define INFOQ_ERRORS_H

#include <cstddef>
#include <stdexcept>
#include <string>

namespace infoq {

// Base for everything the library throws on bad input or failed I/O.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller violated a documented precondition (empty input, k out of range...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Malformed score document or manifest. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what),
        line_(line),
        detail_(what) {}
  std::size_t line() const { return line_; }
  const std::string& detail() const { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

// Pitch outside the 88-key range.
class RangeError : public ParseError {
 public:
  using ParseError::ParseError;
};

// Note extends past the declared number of time steps.
class BoundsError : public ParseError {
 public:
  using ParseError::ParseError;
};

// A data structure failed its own invariants (corrupt index file, bad score).
class InvariantError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// External compressor failed; exit_status is the raw wait status or -1.
class BackendError : public Error {
 public:
  BackendError(const std::string& what, int exit_status)
      : Error(what), exit_status_(exit_status) {}
  int exit_status() const { return exit_status_; }

 private:
  int exit_status_;
};

// Configured offset is not smaller than the measured size.
class OffsetError : public Error {
 public:
  using Error::Error;
};

}  // namespace infoq

#endif  // INFOQ_ERRORS_H
