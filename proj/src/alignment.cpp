#include "revroles/alignment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <tuple>

#include "revroles/errors.hpp"
#include "revroles/logging.hpp"

namespace revroles {

namespace {

bool is_token_char(unsigned char c) {
  return std::isalnum(c) != 0 || c >= 0x80;
}

// Sorted token -> frequency map; sorted iteration keeps the dot-product
// summation order deterministic.
std::map<std::string, int> term_frequencies(std::string_view sentence) {
  std::map<std::string, int> tf;
  std::string current;
  for (unsigned char c : sentence) {
    if (is_token_char(c)) {
      current.push_back(c < 0x80 ? static_cast<char>(std::tolower(c))
                                 : static_cast<char>(c));
    } else if (!current.empty()) {
      ++tf[current];
      current.clear();
    }
  }
  if (!current.empty()) ++tf[current];
  return tf;
}

double cosine(const std::map<std::string, int>& a,
              const std::map<std::string, int>& b) {
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  double dot = 0.0;
  for (const auto& [token, count] : a) {
    auto it = b.find(token);
    if (it != b.end()) dot += static_cast<double>(count) * it->second;
  }
  if (dot == 0.0) return 0.0;
  double norm_a = 0.0;
  for (const auto& [token, count] : a)
    norm_a += static_cast<double>(count) * count;
  double norm_b = 0.0;
  for (const auto& [token, count] : b)
    norm_b += static_cast<double>(count) * count;
  const double sim = dot / (std::sqrt(norm_a) * std::sqrt(norm_b));
  return std::clamp(sim, 0.0, 1.0);
}

}  // namespace

std::vector<std::string> tokenize(std::string_view sentence) {
  std::vector<std::string> tokens;
  std::string current;
  for (unsigned char c : sentence) {
    if (is_token_char(c)) {
      current.push_back(c < 0x80 ? static_cast<char>(std::tolower(c))
                                 : static_cast<char>(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

double sentence_similarity(std::string_view a, std::string_view b) {
  return cosine(term_frequencies(a), term_frequencies(b));
}

std::vector<FlatAlignedPair> align_drafts(std::span<const std::string> original,
                                          std::span<const std::string> revised,
                                          double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0))
    fail(ErrorCode::Config, "alignment threshold must be in (0, 1], got " +
                                std::to_string(threshold));

  const int n = static_cast<int>(original.size());
  const int m = static_cast<int>(revised.size());

  std::vector<std::map<std::string, int>> tf_original(original.size());
  for (int i = 0; i < n; ++i) tf_original[i] = term_frequencies(original[i]);
  std::vector<std::map<std::string, int>> tf_revised(revised.size());
  for (int j = 0; j < m; ++j) tf_revised[j] = term_frequencies(revised[j]);

  std::vector<std::vector<double>> sim(n, std::vector<double>(m, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) sim[i][j] = cosine(tf_original[i], tf_revised[j]);

  //   dp[i][j] = best total similarity aligning the first i original and
  //   first j revised sentences.
  std::vector<std::vector<double>> dp(n + 1, std::vector<double>(m + 1, 0.0));
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= m; ++j) {
      double best = dp[i - 1][j - 1] + sim[i - 1][j - 1];
      best = std::max(best, dp[i - 1][j]);
      best = std::max(best, dp[i][j - 1]);
      dp[i][j] = best;
    }
  }

  // Traceback from the corner, preferring match, then original-skip,
  // then revised-skip, for deterministic output on ties.
  std::vector<FlatAlignedPair> reversed;
  int i = n;
  int j = m;
  while (i > 0 && j > 0) {
    if (dp[i][j] == dp[i - 1][j - 1] + sim[i - 1][j - 1]) {
      reversed.push_back({i - 1, j - 1, sim[i - 1][j - 1]});
      --i;
      --j;
    } else if (dp[i][j] == dp[i - 1][j]) {
      reversed.push_back({i - 1, std::nullopt, 0.0});
      --i;
    } else {
      reversed.push_back({std::nullopt, j - 1, 0.0});
      --j;
    }
  }
  while (i > 0) {
    reversed.push_back({i - 1, std::nullopt, 0.0});
    --i;
  }
  while (j > 0) {
    reversed.push_back({std::nullopt, j - 1, 0.0});
    --j;
  }

  std::vector<FlatAlignedPair> pairs;
  pairs.reserve(reversed.size());
  for (auto it = reversed.rbegin(); it != reversed.rend(); ++it) {
    const FlatAlignedPair& p = *it;
    if (p.original && p.revised && p.similarity < threshold) {
      pairs.push_back({p.original, std::nullopt, 0.0});
      pairs.push_back({std::nullopt, p.revised, 0.0});
    } else {
      pairs.push_back(p);
    }
  }
  return pairs;
}

namespace {

struct FlatDraft {
  std::vector<std::string> sentences;
  std::vector<SentenceRef> refs;
};

FlatDraft flatten(const std::vector<std::vector<std::string>>& draft) {
  FlatDraft flat;
  for (int p = 0; p < static_cast<int>(draft.size()); ++p)
    for (int s = 0; s < static_cast<int>(draft[p].size()); ++s) {
      flat.sentences.push_back(draft[p][s]);
      flat.refs.push_back({p, s});
    }
  return flat;
}

const std::string& sentence_at(const std::vector<std::vector<std::string>>& draft,
                               const SentenceRef& ref) {
  return draft[static_cast<std::size_t>(ref.paragraph)]
              [static_cast<std::size_t>(ref.sentence)];
}

}  // namespace

std::vector<AlignedPair> align_draft_pair(const DraftPair& pair,
                                          double threshold) {
  const FlatDraft original = flatten(pair.original);
  const FlatDraft revised = flatten(pair.revised);
  const auto flat_pairs =
      align_drafts(original.sentences, revised.sentences, threshold);
  std::vector<AlignedPair> pairs;
  pairs.reserve(flat_pairs.size());
  for (const FlatAlignedPair& p : flat_pairs) {
    AlignedPair mapped;
    if (p.original)
      mapped.original_ref = original.refs[static_cast<std::size_t>(*p.original)];
    if (p.revised)
      mapped.revised_ref = revised.refs[static_cast<std::size_t>(*p.revised)];
    mapped.similarity = p.similarity;
    pairs.push_back(mapped);
  }
  return pairs;
}

namespace {

std::string describe_pair(const AlignedPair& pair) {
  std::string text;
  if (pair.original_ref)
    text += "original " + to_string(*pair.original_ref);
  if (pair.revised_ref) {
    if (!text.empty()) text += " / ";
    text += "revised " + to_string(*pair.revised_ref);
  }
  return text;
}

}  // namespace

std::vector<Revision> extract_revisions(
    std::span<const AlignedPair> pairs,
    std::span<const AnnotationRecord> annotations, const DraftPair& pair) {
  std::map<std::tuple<Side, int, int>, Purpose> purpose_at;
  for (const AnnotationRecord& a : annotations) {
    const auto key = std::make_tuple(a.side, a.paragraph, a.sentence);
    auto [it, inserted] = purpose_at.emplace(key, a.purpose);
    if (!inserted)
      fail(ErrorCode::Load,
           "essay '" + pair.essay_id + "': duplicate annotation for " +
               std::string(to_string(a.side)) + " sentence " +
               to_string(SentenceRef{a.paragraph, a.sentence}));
  }
  const auto lookup = [&](Side side, const SentenceRef& ref)
      -> std::optional<Purpose> {
    auto it = purpose_at.find(std::make_tuple(side, ref.paragraph, ref.sentence));
    if (it == purpose_at.end()) return std::nullopt;
    return it->second;
  };

  const int revised_paragraphs = static_cast<int>(pair.revised.size());
  std::vector<Revision> revisions;
  int last_matched_revised_paragraph = -1;

  for (const AlignedPair& aligned : pairs) {
    Revision revision;
    revision.essay_id = pair.essay_id;
    revision.original_ref = aligned.original_ref;
    revision.revised_ref = aligned.revised_ref;

    if (aligned.original_ref && aligned.revised_ref) {
      const std::string& before = sentence_at(pair.original, *aligned.original_ref);
      const std::string& after = sentence_at(pair.revised, *aligned.revised_ref);
      last_matched_revised_paragraph = aligned.revised_ref->paragraph;
      if (before == after) continue;  // only nonidentical pairs are revisions
      revision.operation = Operation::Modify;
      const auto from_revised = lookup(Side::Revised, *aligned.revised_ref);
      const auto from_original = lookup(Side::Original, *aligned.original_ref);
      if (from_revised && from_original && *from_revised != *from_original)
        fail(ErrorCode::Load,
             "essay '" + pair.essay_id + "': conflicting purposes for " +
                 describe_pair(aligned));
      if (!from_revised && !from_original)
        fail(ErrorCode::MissingAnnotation,
             "essay '" + pair.essay_id + "': modified pair " +
                 describe_pair(aligned) + " has no purpose annotation");
      revision.purpose = from_revised ? *from_revised : *from_original;
      revision.position =
          position_of(aligned.revised_ref->paragraph, revised_paragraphs);
    } else if (aligned.revised_ref) {
      revision.operation = Operation::Add;
      const auto purpose = lookup(Side::Revised, *aligned.revised_ref);
      if (!purpose)
        fail(ErrorCode::MissingAnnotation,
             "essay '" + pair.essay_id + "': added sentence " +
                 describe_pair(aligned) + " has no purpose annotation");
      revision.purpose = *purpose;
      revision.position =
          position_of(aligned.revised_ref->paragraph, revised_paragraphs);
    } else {
      revision.operation = Operation::Delete;
      const auto purpose = lookup(Side::Original, *aligned.original_ref);
      if (!purpose)
        fail(ErrorCode::MissingAnnotation,
             "essay '" + pair.essay_id + "': deleted sentence " +
                 describe_pair(aligned) + " has no purpose annotation");
      revision.purpose = *purpose;
      int context_paragraph;
      if (last_matched_revised_paragraph >= 0) {
        context_paragraph = last_matched_revised_paragraph;
      } else {
        context_paragraph = std::clamp(aligned.original_ref->paragraph, 0,
                                       revised_paragraphs - 1);
      }
      revision.position = position_of(context_paragraph, revised_paragraphs);
      log_debug("essay '", pair.essay_id, "': delete at original ",
                to_string(*aligned.original_ref),
                " assigned revised paragraph ", context_paragraph, " (",
                last_matched_revised_paragraph >= 0 ? "context" : "fallback",
                ")");
    }

    if (is_surface(revision.purpose) && revision.operation != Operation::Modify)
      fail(ErrorCode::TaxonomyViolation,
           "essay '" + pair.essay_id + "': surface purpose " +
               std::string(to_string(revision.purpose)) + " annotated on " +
               std::string(to_string(revision.operation)) + " at " +
               describe_pair(aligned));
    revisions.push_back(std::move(revision));
  }
  return revisions;
}

std::vector<Revision> revisions_for(const DraftPair& pair, double threshold) {
  const auto pairs = align_draft_pair(pair, threshold);
  return extract_revisions(pairs, pair.annotations, pair);
}

}  // namespace revroles
