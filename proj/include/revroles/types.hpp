#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace revroles {

// Coarse paragraph position of a revision in the revised essay: first
// paragraph, last paragraph, or anything in between.
enum class Position { Beg, Mid, End };

enum class Operation { Add, Delete, Modify };

// The nine revision purposes. The first six change essay content, the
// last three are surface (form) edits and only occur with Modify.
enum class Purpose {
  Claims,
  Reasoning,
  Evidence,
  Rebuttal,
  General,
  Precision,
  Grammar,
  WordUsage,
  Organization,
};

inline constexpr int kPurposeCount = 9;
inline constexpr int kContentPurposeCount = 6;
inline constexpr int kSurfacePurposeCount = 3;

constexpr std::array<Purpose, kPurposeCount> all_purposes() {
  return {Purpose::Claims,    Purpose::Reasoning, Purpose::Evidence,
          Purpose::Rebuttal,  Purpose::General,   Purpose::Precision,
          Purpose::Grammar,   Purpose::WordUsage, Purpose::Organization};
}

constexpr bool is_surface(Purpose p) {
  return p == Purpose::Grammar || p == Purpose::WordUsage ||
         p == Purpose::Organization;
}

std::string_view to_string(Position position);
std::string_view to_string(Operation operation);
std::string_view to_string(Purpose purpose);

Position position_from_string(std::string_view text);
Operation operation_from_string(std::string_view text);
Purpose purpose_from_string(std::string_view text);
std::optional<Purpose> try_purpose_from_string(std::string_view text);

// (paragraph, sentence) coordinates within one draft.
struct SentenceRef {
  int paragraph = 0;
  int sentence = 0;

  friend auto operator<=>(const SentenceRef&, const SentenceRef&) = default;
};

std::string to_string(const SentenceRef& ref);

// One extracted sentence-level edit between two drafts.
struct Revision {
  std::string essay_id;
  Operation operation = Operation::Modify;
  Purpose purpose = Purpose::General;
  Position position = Position::Beg;
  std::optional<SentenceRef> original_ref;
  std::optional<SentenceRef> revised_ref;
};

}  // namespace revroles
