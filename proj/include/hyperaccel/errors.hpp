#pragma once

#include <stdexcept>
#include <string>

namespace hyperaccel {

class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A denominator or Pochhammer reciprocal factor evaluated to zero.
class PoleError : public MathError {
 public:
  using MathError::MathError;
};

class MalformedInput : public MathError {
 public:
  using MathError::MathError;
};

class UnsupportedSpec : public MathError {
 public:
  using MathError::MathError;
};

class CannotBound : public MathError {
 public:
  using MathError::MathError;
};

class NotCollapsible : public MathError {
 public:
  using MathError::MathError;
};

class ConvergenceTooSlow : public MathError {
 public:
  using MathError::MathError;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hyperaccel
