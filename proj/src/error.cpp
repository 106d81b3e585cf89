#include "wsa/error.hpp"

namespace wsa {

namespace {

std::string join_violations(const std::vector<std::string>& names) {
  std::string out = "hypothesis violated:";
  for (std::size_t i = 0; i < names.size(); ++i) {
    out += (i == 0 ? " " : "; ");
    out += names[i];
  }
  return out;
}

}  // namespace

HypothesisError::HypothesisError(std::vector<std::string> violations)
    : Error(ExitCode::hypothesis, join_violations(violations)),
      violations_(std::move(violations)) {}

}  // namespace wsa
