#pragma once

#include <stdexcept>
#include <string>

namespace gpack {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (graph files, packing dumps, config documents).
class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  explicit ParseError(std::string message) : Error(std::move(message)), line_(0) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A caller violated an operation's precondition.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// A configured resource limit (copy cap, search node budget, pattern order
// bound) was exceeded and the operation refuses to return a silent partial.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// A pipeline stage aborted; carries the stage name so failures are attributable.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& message)
      : Error("stage " + stage + ": " + message), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

// Theoretical-mode parameters cannot be instantiated at the given input size.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace gpack
