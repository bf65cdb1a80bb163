#pragma once

#include <stdexcept>
#include <string>

namespace hetnet {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numeric argument outside the domain of a formula (beta outside (0, 2),
/// NaN weights, non-positive beam widths, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Unknown base-station or user id, or otherwise malformed call.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A scheduler could not produce a feasible allocation.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class ScenarioError : public Error {
 public:
  ScenarioError(int line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace hetnet
