#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace omegafract {

enum class ErrorCode {
  syntax,
  semantic,
  file_not_found,
  empty_language,
  not_trim,
  not_closed,
  acyclic_state,
  nondeterministic,
  not_strongly_connected,
  ambiguous,
  unreachable_state,
  invalid_state,
  cap_exceeded,
  arity,
  digit_range,
  usage,
};

/// Machine-readable name, as it appears in CLI reports.
constexpr std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::syntax: return "syntax-error";
    case ErrorCode::semantic: return "semantic-error";
    case ErrorCode::file_not_found: return "file-not-found";
    case ErrorCode::empty_language: return "empty-language";
    case ErrorCode::not_trim: return "not-trim";
    case ErrorCode::not_closed: return "not-closed";
    case ErrorCode::acyclic_state: return "acyclic-state";
    case ErrorCode::nondeterministic: return "nondeterministic-input";
    case ErrorCode::not_strongly_connected: return "not-strongly-connected";
    case ErrorCode::ambiguous: return "ambiguous-input";
    case ErrorCode::unreachable_state: return "unreachable-state";
    case ErrorCode::invalid_state: return "invalid-state";
    case ErrorCode::cap_exceeded: return "cap-exceeded";
    case ErrorCode::arity: return "arity-error";
    case ErrorCode::digit_range: return "digit-range";
    case ErrorCode::usage: return "usage-error";
  }
  return "unknown-error";
}

/// Input errors concern the document itself; everything else is a violated
/// precondition of an analysis (or a CLI usage problem).
constexpr bool is_input_error(ErrorCode code) {
  return code == ErrorCode::syntax || code == ErrorCode::semantic ||
         code == ErrorCode::file_not_found || code == ErrorCode::digit_range;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace omegafract
