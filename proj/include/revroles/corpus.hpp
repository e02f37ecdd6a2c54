#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "revroles/types.hpp"

namespace revroles {

enum class Side { Original, Revised };

std::string_view to_string(Side side);
Side side_from_string(std::string_view text);

// Purpose annotation for one sentence of one draft.
struct AnnotationRecord {
  Side side = Side::Revised;
  int paragraph = 0;
  int sentence = 0;
  Purpose purpose = Purpose::General;
};

// Original and revised drafts of one essay, pre-segmented into
// paragraphs and sentences, plus the purpose annotations.
struct DraftPair {
  std::string essay_id;
  std::vector<std::vector<std::string>> original;
  std::vector<std::vector<std::string>> revised;
  std::vector<AnnotationRecord> annotations;
};

// Expert grades before and after revision, raw and scaled to [0, 100].
struct ScoreRecord {
  std::string essay_id;
  double score1_raw = 0.0;
  double score2_raw = 0.0;
  double rubric_min = 0.0;
  double rubric_max = 0.0;
  double score1 = 0.0;
  double score2 = 0.0;
};

struct CorpusEntry {
  DraftPair drafts;
  std::optional<ScoreRecord> score;
};

// Whether scaling bounds come from the rubric columns or from the
// observed raw scores in the file (pooled over both score columns).
enum class ScaleMode { Rubric, Observed };

// Linear scaling 100*(x-min)/(max-min). Requires min < max.
double scale_score(double x, double min, double max);

// First paragraph -> beg, last paragraph (of two or more) -> end,
// everything else -> mid. A single-paragraph essay maps to beg.
Position position_of(int paragraph_index, int paragraph_count);

// Validates a DraftPair against its invariants: nonempty id, >= 1
// paragraph per draft, >= 1 sentence per paragraph, in-range annotation
// indices, no duplicate annotation targets.
void validate_draft_pair(const DraftPair& pair);

// Reads every *.json essay in the directory (sorted by filename) plus an
// optional scores.csv. Scores are scaled on load.
std::vector<CorpusEntry> load_corpus(const std::filesystem::path& directory,
                                     ScaleMode mode = ScaleMode::Rubric);

DraftPair parse_draft_pair(const std::string& json_text,
                           const std::string& context);

std::vector<ScoreRecord> load_scores(const std::filesystem::path& csv_path,
                                     ScaleMode mode = ScaleMode::Rubric);
std::vector<ScoreRecord> parse_scores(const std::string& csv_text,
                                      const std::string& context,
                                      ScaleMode mode = ScaleMode::Rubric);

// Canonical serialized forms; load_corpus of a saved corpus round-trips
// byte-identically.
std::string draft_pair_to_json(const DraftPair& pair);
std::string scores_to_csv(const std::vector<ScoreRecord>& scores);
void save_corpus(const std::filesystem::path& directory,
                 const std::vector<CorpusEntry>& entries);

}  // namespace revroles
