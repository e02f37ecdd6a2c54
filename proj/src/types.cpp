#include "revroles/types.hpp"

#include "revroles/errors.hpp"

namespace revroles {

std::string_view to_string(Position position) {
  switch (position) {
    case Position::Beg: return "beg";
    case Position::Mid: return "mid";
    case Position::End: return "end";
  }
  return "?";
}

std::string_view to_string(Operation operation) {
  switch (operation) {
    case Operation::Add: return "Add";
    case Operation::Delete: return "Delete";
    case Operation::Modify: return "Modify";
  }
  return "?";
}

std::string_view to_string(Purpose purpose) {
  switch (purpose) {
    case Purpose::Claims: return "Claims";
    case Purpose::Reasoning: return "Reasoning";
    case Purpose::Evidence: return "Evidence";
    case Purpose::Rebuttal: return "Rebuttal";
    case Purpose::General: return "General";
    case Purpose::Precision: return "Precision";
    case Purpose::Grammar: return "Grammar";
    case Purpose::WordUsage: return "Word-Usage";
    case Purpose::Organization: return "Organization";
  }
  return "?";
}

Position position_from_string(std::string_view text) {
  if (text == "beg") return Position::Beg;
  if (text == "mid") return Position::Mid;
  if (text == "end") return Position::End;
  fail(ErrorCode::Format, "unknown position '" + std::string(text) + "'");
}

Operation operation_from_string(std::string_view text) {
  if (text == "Add") return Operation::Add;
  if (text == "Delete") return Operation::Delete;
  if (text == "Modify") return Operation::Modify;
  fail(ErrorCode::Format, "unknown operation '" + std::string(text) + "'");
}

std::optional<Purpose> try_purpose_from_string(std::string_view text) {
  for (Purpose p : all_purposes())
    if (to_string(p) == text) return p;
  return std::nullopt;
}

Purpose purpose_from_string(std::string_view text) {
  if (auto p = try_purpose_from_string(text)) return *p;
  fail(ErrorCode::Format, "unknown purpose '" + std::string(text) + "'");
}

std::string to_string(const SentenceRef& ref) {
  return "(" + std::to_string(ref.paragraph) + "," +
         std::to_string(ref.sentence) + ")";
}

}  // namespace revroles
