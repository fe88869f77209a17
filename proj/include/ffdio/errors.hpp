#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ffdio {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error("syntax error at position " + std::to_string(position) + ": " + what),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero polynomial") {}
  using Error::Error;
};

// Invalid argument for a mathematical operation (ord of 0, gcd(0,0), x on H, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Evaluation of an index expression failed at a specific alpha.
class EvalError : public Error {
 public:
  EvalError(std::int64_t alpha, const std::string& what)
      : Error("evaluation failed at alpha=" + std::to_string(alpha) + ": " + what), alpha_(alpha) {}
  std::int64_t alpha() const { return alpha_; }

 private:
  std::int64_t alpha_;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

// An exact identity that must hold by construction did not. Always a bug.
class IdentityFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace ffdio
