#include "revroles/vocab.hpp"

#include <numeric>

#include "revroles/errors.hpp"

namespace revroles {

namespace {

constexpr std::array<Operation, 3> kOperationOrder = {
    Operation::Modify, Operation::Add, Operation::Delete};

constexpr std::array<Position, 3> kPositionOrder = {
    Position::Beg, Position::Mid, Position::End};

std::string_view sign_of(Operation operation) {
  switch (operation) {
    case Operation::Add: return "+";
    case Operation::Delete: return "-";
    case Operation::Modify: return "";
  }
  return "";
}

}  // namespace

std::string word_text(Operation operation, Purpose purpose,
                      Position position) {
  std::string text(sign_of(operation));
  text += to_string(purpose);
  text += '_';
  text += to_string(position);
  return text;
}

Vocabulary::Vocabulary() {
  words_.reserve(kVocabularySize);
  for (Purpose purpose : all_purposes()) {
    for (Operation operation : kOperationOrder) {
      if (is_surface(purpose) && operation != Operation::Modify) continue;
      for (Position position : kPositionOrder) {
        RevisionWord word;
        word.text = word_text(operation, purpose, position);
        word.operation = operation;
        word.purpose = purpose;
        word.position = position;
        index_.emplace(word.text, static_cast<int>(words_.size()));
        words_.push_back(std::move(word));
      }
    }
  }
}

const RevisionWord& Vocabulary::word(int id) const {
  if (id < 0 || id >= size())
    fail(ErrorCode::Bounds, "word id " + std::to_string(id) + " out of range");
  return words_[static_cast<std::size_t>(id)];
}

int Vocabulary::id_of(std::string_view text) const {
  auto it = index_.find(std::string(text));
  if (it == index_.end())
    fail(ErrorCode::Format,
         "'" + std::string(text) + "' is not a revision word");
  return it->second;
}

int Vocabulary::id_of(Operation operation, Purpose purpose,
                      Position position) const {
  if (is_surface(purpose) && operation != Operation::Modify)
    fail(ErrorCode::TaxonomyViolation,
         "surface purpose " + std::string(to_string(purpose)) +
             " only occurs with Modify, got " +
             std::string(to_string(operation)));
  return id_of(word_text(operation, purpose, position));
}

bool Vocabulary::contains(std::string_view text) const {
  return index_.find(std::string(text)) != index_.end();
}

Vocabulary build_vocabulary() { return Vocabulary(); }

RevisionWord parse_revision_word(std::string_view text) {
  Operation operation = Operation::Modify;
  std::string_view rest = text;
  if (!rest.empty() && (rest.front() == '+' || rest.front() == '-')) {
    operation = rest.front() == '+' ? Operation::Add : Operation::Delete;
    rest.remove_prefix(1);
  }
  const auto sep = rest.rfind('_');
  if (sep == std::string_view::npos)
    fail(ErrorCode::Format,
         "'" + std::string(text) + "' is not a revision word");
  const Purpose purpose = purpose_from_string(rest.substr(0, sep));
  const Position position = position_from_string(rest.substr(sep + 1));
  if (is_surface(purpose) && operation != Operation::Modify)
    fail(ErrorCode::TaxonomyViolation,
         "'" + std::string(text) + "' combines a surface purpose with " +
             std::string(to_string(operation)));
  RevisionWord word;
  word.text = std::string(text);
  word.operation = operation;
  word.purpose = purpose;
  word.position = position;
  return word;
}

RevisionWord encode_revision(const Revision& revision) {
  if (is_surface(revision.purpose) && revision.operation != Operation::Modify)
    fail(ErrorCode::TaxonomyViolation,
         "surface purpose " + std::string(to_string(revision.purpose)) +
             " only occurs with Modify, got " +
             std::string(to_string(revision.operation)) +
             (revision.essay_id.empty() ? "" : " in essay " + revision.essay_id));
  RevisionWord word;
  word.text = word_text(revision.operation, revision.purpose, revision.position);
  word.operation = revision.operation;
  word.purpose = revision.purpose;
  word.position = revision.position;
  return word;
}

EditorDocument make_editor_document(std::string editor_id,
                                    std::vector<int> counts) {
  if (static_cast<int>(counts.size()) != kVocabularySize)
    fail(ErrorCode::VocabularyMismatch,
         "editor document for '" + editor_id + "' has " +
             std::to_string(counts.size()) + " counts, expected 63");
  for (int c : counts)
    if (c < 0)
      fail(ErrorCode::Format,
           "editor document for '" + editor_id + "' has a negative count");
  EditorDocument doc;
  doc.editor_id = std::move(editor_id);
  doc.total = std::accumulate(counts.begin(), counts.end(), 0LL);
  doc.counts = std::move(counts);
  return doc;
}

EditorDocument editor_document(std::string editor_id,
                               std::span<const Revision> revisions) {
  static const Vocabulary vocabulary;
  std::vector<int> counts(kVocabularySize, 0);
  for (const Revision& revision : revisions) {
    const int id = vocabulary.id_of(revision.operation, revision.purpose,
                                    revision.position);
    ++counts[static_cast<std::size_t>(id)];
  }
  return make_editor_document(std::move(editor_id), std::move(counts));
}

}  // namespace revroles
