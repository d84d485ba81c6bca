#pragma once

#include <stdexcept>
#include <string>

namespace gedembed {

enum class ErrorCategory { validation, config, parse, resource, numeric };

inline const char* to_string(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::validation: return "validation";
    case ErrorCategory::config: return "config";
    case ErrorCategory::parse: return "parse";
    case ErrorCategory::resource: return "resource";
    case ErrorCategory::numeric: return "numeric";
  }
  return "unknown";
}

// Single exception type for the whole library. The category maps to the CLI
// exit code: validation/config/parse -> 1, resource/numeric -> 2.
class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const { return category_; }

  int exit_code() const {
    return (category_ == ErrorCategory::resource || category_ == ErrorCategory::numeric) ? 2 : 1;
  }

 private:
  ErrorCategory category_;
};

[[noreturn]] inline void throw_validation(const std::string& msg) {
  throw Error(ErrorCategory::validation, msg);
}
[[noreturn]] inline void throw_config(const std::string& msg) {
  throw Error(ErrorCategory::config, msg);
}
[[noreturn]] inline void throw_parse(const std::string& msg) {
  throw Error(ErrorCategory::parse, msg);
}
[[noreturn]] inline void throw_resource(const std::string& msg) {
  throw Error(ErrorCategory::resource, msg);
}
[[noreturn]] inline void throw_numeric(const std::string& msg) {
  throw Error(ErrorCategory::numeric, msg);
}

}  // namespace gedembed
