#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace star {

// Base for every error the library raises. Agents never let these escape;
// they are converted to typed statuses at the agent boundary.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition was violated by the caller.
class ContractError : public Error {
 public:
  using Error::Error;
};

// Input data is well-formed but semantically invalid (open ring, bad frame).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at " + std::to_string(position) + ")"), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class NoSolutionError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

class NoPathError : public Error {
 public:
  using Error::Error;
};

// Quantity is mathematically undefined for the input (bearing of p to p,
// correlation of a constant series).
class UndefinedError : public Error {
 public:
  using Error::Error;
};

// A lookup against a fixture or registry found nothing acceptable.
class LookupError : public Error {
 public:
  using Error::Error;
};

}  // namespace star
