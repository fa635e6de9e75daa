#pragma once

#include <stdexcept>
#include <string>

namespace teamgames {

// Error categories map onto the CLI's exit codes and its
// machine-parsable "error:<category>:" prefixes.
enum class ErrorCategory {
  kRepresentation,  // a policy cannot be expressed in the requested form
  kShape,           // dimension mismatch between policies and games
  kParse,           // malformed game/policy/trace text
  kConfig,          // invalid run configuration
  kSizeGuard,       // problem too large for an exact routine
  kNumeric,         // a numerical contract (e.g. solver certificate) failed
};

const char* to_string(ErrorCategory category);

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

}  // namespace teamgames
