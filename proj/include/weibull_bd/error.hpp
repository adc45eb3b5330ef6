#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace weibull_bd {

enum class ErrorCode {
  EmptyInput,
  NonPositiveValue,
  DegenerateSample,
  DomainError,
  DegenerateAnchor,
  EmptyIntersection,
  InvalidConfig,
  InvalidSpec,
  ParseError,
  EmptyFile,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NonPositiveValue: return "NonPositiveValue";
    case ErrorCode::DegenerateSample: return "DegenerateSample";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::DegenerateAnchor: return "DegenerateAnchor";
    case ErrorCode::EmptyIntersection: return "EmptyIntersection";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EmptyFile: return "EmptyFile";
  }
  return "Unknown";
}

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace weibull_bd
