#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace qhe {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand dimensions or moduli do not line up.
class ShapeError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

// A constructor or keygen argument is outside its supported range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// An operation was called with inputs violating its documented precondition
// (e.g. a GSW message at or above the message bound).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ExhaustionError : public Error {
 public:
  using Error::Error;
};

// File or socket setup failures on the local host.
class IoError : public Error {
 public:
  using Error::Error;
};

// Wire-level failures. ParseError and SchemeError map to HTTP 400,
// ValidationError to 422.
class ParseError : public Error {
 public:
  using Error::Error;
};

class SchemeError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  ValidationError(std::string path, const std::string& message)
      : Error(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// The addition service could not be reached or answered with a non-200 status.
class ProtocolError : public Error {
 public:
  explicit ProtocolError(const std::string& message, int status = 0)
      : Error(message), status_(status) {}

  int status() const noexcept { return status_; }

 private:
  int status_;
};

}  // namespace qhe
