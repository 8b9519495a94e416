#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orbitgauge {

enum class ErrorKind {
  InvalidArgument,
  InvalidParameter,
  ParseError,
  DegenerateInput,
  DegenerateOrbit,
  BetaNotCertified,
  OutsideWindow,
  SearchExhausted,
  HypothesisViolated,
  QueryAtBirth,
  ChainMismatch,
  DoubleKnotHypothesisFailed,
};

constexpr std::string_view kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::DegenerateOrbit: return "DegenerateOrbit";
    case ErrorKind::BetaNotCertified: return "BetaNotCertified";
    case ErrorKind::OutsideWindow: return "OutsideWindow";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::QueryAtBirth: return "QueryAtBirth";
    case ErrorKind::ChainMismatch: return "ChainMismatch";
    case ErrorKind::DoubleKnotHypothesisFailed: return "DoubleKnotHypothesisFailed";
  }
  return "Unknown";
}

/// True for failures of a mathematical hypothesis (degeneracy, uncertified
/// parameters) as opposed to malformed input.
constexpr bool is_hypothesis_failure(ErrorKind k) {
  switch (k) {
    case ErrorKind::DegenerateInput:
    case ErrorKind::DegenerateOrbit:
    case ErrorKind::HypothesisViolated:
    case ErrorKind::DoubleKnotHypothesisFailed:
    case ErrorKind::BetaNotCertified:
    case ErrorKind::OutsideWindow:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, std::string path = {})
      : std::runtime_error(std::string(kind_name(kind)) + ": " + message),
        kind_(kind),
        message_(std::move(message)),
        path_(std::move(path)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& message() const noexcept { return message_; }
  /// Field path of the offending value, e.g. "truncated.eps"; may be empty.
  const std::string& path() const noexcept { return path_; }

 private:
  ErrorKind kind_;
  std::string message_;
  std::string path_;
};

}  // namespace orbitgauge
