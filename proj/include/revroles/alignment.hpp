#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "revroles/corpus.hpp"
#include "revroles/types.hpp"

namespace revroles {

// Lowercased alphanumeric token runs; bytes >= 0x80 are kept so UTF-8
// words survive intact.
std::vector<std::string> tokenize(std::string_view sentence);

// Cosine similarity of token term-frequency vectors, in [0, 1].
// Two empty sentences compare as 1.0; empty vs nonempty as 0.0.
double sentence_similarity(std::string_view a, std::string_view b);

// Alignment entry over flat sentence indices.
struct FlatAlignedPair {
  std::optional<int> original;
  std::optional<int> revised;
  double similarity = 0.0;
};

// Alignment entry with (paragraph, sentence) coordinates.
struct AlignedPair {
  std::optional<SentenceRef> original_ref;
  std::optional<SentenceRef> revised_ref;
  double similarity = 0.0;
};

// Global monotone (non-crossing) alignment maximizing total similarity
// over matched pairs, computed by dynamic programming. Matched pairs
// whose similarity falls below the threshold are split into an
// original-only and a revised-only entry; every sentence of each side
// appears in exactly one entry. Threshold must be in (0, 1].
std::vector<FlatAlignedPair> align_drafts(std::span<const std::string> original,
                                          std::span<const std::string> revised,
                                          double threshold);

// Aligns the flattened drafts of a pair and maps the result back to
// (paragraph, sentence) refs.
std::vector<AlignedPair> align_draft_pair(const DraftPair& pair,
                                          double threshold);

// Turns aligned pairs into revisions: matched nonidentical -> Modify,
// revised-only -> Add, original-only -> Delete; identical matches emit
// nothing. Position comes from the revised-draft paragraph; deletions
// use the paragraph of the nearest preceding matched revised sentence,
// falling back to the original paragraph index clamped to the revised
// paragraph count.
std::vector<Revision> extract_revisions(
    std::span<const AlignedPair> pairs,
    std::span<const AnnotationRecord> annotations, const DraftPair& pair);

// Convenience: align + extract for one essay.
std::vector<Revision> revisions_for(const DraftPair& pair, double threshold);

}  // namespace revroles
