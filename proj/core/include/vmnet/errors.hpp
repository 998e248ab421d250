#pragma once

#include <stdexcept>
#include <string>

namespace vmnet {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or violated precondition (zero dims, mismatched shapes, p <= 0).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A file is structurally malformed (bad magic, bad dims, truncated FMAP payload).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Well-formed header carrying a version this build does not understand.
class UnsupportedVersionError : public FormatError {
 public:
  using FormatError::FormatError;
};

/// Index file is truncated or fails its checksum.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

/// Index construction rejected its input (duplicate ids, inconsistent dims).
class BuildError : public Error {
 public:
  using Error::Error;
};

/// Evaluation inputs are inconsistent (unknown query, duplicate ids).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A text input line could not be parsed. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace vmnet
