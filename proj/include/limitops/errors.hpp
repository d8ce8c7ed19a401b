#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace limitops {

// Error taxonomy shared by the library and the CLI. The CLI maps these to
// exit codes: ParseError -> 1, PreconditionError -> 2, NumericError -> 3.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Violated operation preconditions (UnsupportedP, InfiniteWindow,
// AbstractEntriesNotMaterializable, UnboundedScheme, NotExhaustive, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Numeric failures during an otherwise well-posed run (ScheduleTooShallow,
// NoStableSubsequence, certificate overflow, exhausted iteration budgets).
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace limitops
