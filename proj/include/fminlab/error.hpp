#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fminlab {

// Root of every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed expression text. offset is the byte offset into the input.
class ParseError : public Error {
 public:
  enum class Kind { Syntax, UnknownIdentifier, WrongVariable, NonConstantExponent };

  ParseError(Kind kind, std::size_t offset, const std::string& what);

  Kind kind() const noexcept { return kind_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

// Evaluation outside the domain of an elementary function.
class EvalDomainError : public Error {
 public:
  EvalDomainError(const std::string& subexpression, const std::string& reason);

  const std::string& subexpression() const noexcept { return subexpression_; }

 private:
  std::string subexpression_;
};

// An operation was called outside its declared preconditions.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A numerical contract (convergence, tolerance, consistency) was not met.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// Scenario configuration could not be interpreted.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace fminlab
