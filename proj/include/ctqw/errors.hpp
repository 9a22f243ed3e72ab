#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ctqw {

// Precondition violated by the caller (non-symmetric input, bad parameter).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of an operation, e.g. negative time.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InvalidNodeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class InvalidGenerationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Partition is not equitable, so the reduced dynamics would not be exact.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace ctqw
