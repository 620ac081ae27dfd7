#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qumpi {

enum class ErrorCategory {
  InvalidArgument,
  Unphysical,
  UndefinedRatio,
  Truncation,
  Parse,
  Io,
  NoCrossing,
};

std::string_view categoryName(ErrorCategory category);

// All library failures are reported through this exception; the category is
// what the CLI turns into an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

[[noreturn]] inline void fail(ErrorCategory category, const std::string& message) {
  throw Error(category, message);
}

inline void require(bool condition, const std::string& message) {
  if (!condition) fail(ErrorCategory::InvalidArgument, message);
}

}  // namespace qumpi
