#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace netres {

/// Raised when a scenario file or a domain object violates a declared
/// invariant. Carries the full list of problems found, not just the first.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> problems)
      : std::runtime_error(join(problems)), problems_(std::move(problems)) {}

  explicit ValidationError(const std::string& problem)
      : ValidationError(std::vector<std::string>{problem}) {}

  const std::vector<std::string>& problems() const { return problems_; }

 private:
  static std::string join(const std::vector<std::string>& ps) {
    std::string out;
    for (const auto& p : ps) {
      if (!out.empty()) out += "; ";
      out += p;
    }
    return out;
  }

  std::vector<std::string> problems_;
};

}  // namespace netres
