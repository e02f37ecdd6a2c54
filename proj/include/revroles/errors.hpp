#pragma once

#include <stdexcept>
#include <string>

namespace revroles {

// Stable machine-readable error categories. The CLI prints them as
// single-line "revroles: error: <category>: <message>" diagnostics.
enum class ErrorCode {
  InvalidRubric,
  Bounds,
  Load,
  Format,
  Io,
  TaxonomyViolation,
  MissingAnnotation,
  Config,
  Training,
  VocabularyMismatch,
  SingularDesign,
  DegenerateTarget,
  DegenerateVariance,
  PerfectConfound,
  InsufficientData,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace revroles
