#include "revroles/errors.hpp"

namespace revroles {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidRubric: return "invalid-rubric";
    case ErrorCode::Bounds: return "bounds";
    case ErrorCode::Load: return "load";
    case ErrorCode::Format: return "format";
    case ErrorCode::Io: return "io";
    case ErrorCode::TaxonomyViolation: return "taxonomy-violation";
    case ErrorCode::MissingAnnotation: return "missing-annotation";
    case ErrorCode::Config: return "config";
    case ErrorCode::Training: return "training";
    case ErrorCode::VocabularyMismatch: return "vocabulary-mismatch";
    case ErrorCode::SingularDesign: return "singular-design";
    case ErrorCode::DegenerateTarget: return "degenerate-target";
    case ErrorCode::DegenerateVariance: return "degenerate-variance";
    case ErrorCode::PerfectConfound: return "perfect-confound";
    case ErrorCode::InsufficientData: return "insufficient-data";
  }
  return "unknown";
}

}  // namespace revroles
