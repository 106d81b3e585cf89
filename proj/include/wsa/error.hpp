#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wsa {

/// Process exit codes used by the command-line front end.
enum class ExitCode : int {
  ok = 0,
  hypothesis = 1,
  parse = 2,
  cap_exceeded = 3,
  theorem_violation = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

/// One or more named preconditions of a formula or construction failed.
/// Every violated condition is listed, not just the first.
class HypothesisError : public Error {
 public:
  explicit HypothesisError(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const noexcept {
    return violations_;
  }

 private:
  std::vector<std::string> violations_;
};

/// Malformed input: a config line, a CLI value, a number that does not parse.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what)
      : Error(ExitCode::parse, what) {}
};

/// A workload guard (candidate count, grid size, integer width) would be
/// exceeded.
class CapExceeded : public Error {
 public:
  explicit CapExceeded(const std::string& what)
      : Error(ExitCode::cap_exceeded, what) {}
};

/// A search that a theorem guarantees to succeed came back empty.
class TheoremViolation : public Error {
 public:
  explicit TheoremViolation(const std::string& what)
      : Error(ExitCode::theorem_violation, what) {}
};

/// Collects named violations and throws them together.
class Violations {
 public:
  void check(bool ok, std::string name) {
    if (!ok) names_.push_back(std::move(name));
  }
  bool empty() const noexcept { return names_.empty(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  void throw_if_any() const {
    if (!names_.empty()) throw HypothesisError(names_);
  }

 private:
  std::vector<std::string> names_;
};

}  // namespace wsa
