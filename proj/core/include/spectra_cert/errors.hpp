#pragma once

#include <stdexcept>
#include <string>

namespace spectra_cert {

/// Argument outside the documented domain of an operation.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input violates a structural precondition (e.g. a forest was required).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Request exceeds a configured size cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical routine could not reach the requested error bound.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// A certificate did not verify.
class CertificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input; carries a 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace spectra_cert
