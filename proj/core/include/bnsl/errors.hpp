#pragma once

#include <stdexcept>
#include <string>

namespace bnsl {

/// Malformed or inconsistent input (score files, data files, parameters).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Score-file error tied to a 1-based line number.
class ParseError : public InputError {
 public:
  ParseError(int line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// A run was refused because its predicted tables exceed a configured limit.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The instance admits no DAG with finite score.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bnsl
