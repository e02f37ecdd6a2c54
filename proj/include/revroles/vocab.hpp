#pragma once

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "revroles/types.hpp"

namespace revroles {

inline constexpr int kVocabularySize = 63;
inline constexpr int kContentWordCount = 54;
inline constexpr int kSurfaceWordCount = 9;

// One vocabulary entry: "+Purpose_position" for Add, "-Purpose_position"
// for Delete, and the bare "Purpose_position" for Modify.
struct RevisionWord {
  std::string text;
  Operation operation = Operation::Modify;
  Purpose purpose = Purpose::General;
  Position position = Position::Beg;
};

std::string word_text(Operation operation, Purpose purpose, Position position);

// Parses a vocabulary word string back into its components. Rejects
// strings outside the 63-word universe.
RevisionWord parse_revision_word(std::string_view text);

// The fixed 63-word universe: six content purposes x three operations x
// three positions, plus three surface purposes (Modify only) x three
// positions. Word ids are dense 0..62 in (purpose, operation, position)
// order with operations ordered Modify, Add, Delete.
class Vocabulary {
 public:
  Vocabulary();

  int size() const { return static_cast<int>(words_.size()); }
  const std::vector<RevisionWord>& words() const { return words_; }
  const RevisionWord& word(int id) const;

  // Id lookup by string; throws on unknown words.
  int id_of(std::string_view text) const;
  // Id lookup by components; throws taxonomy-violation for surface
  // purposes combined with Add or Delete.
  int id_of(Operation operation, Purpose purpose, Position position) const;

  bool contains(std::string_view text) const;

 private:
  std::vector<RevisionWord> words_;
  std::unordered_map<std::string, int> index_;
};

Vocabulary build_vocabulary();

// Encodes one revision as its vocabulary word.
RevisionWord encode_revision(const Revision& revision);

// Bag-of-words counts over the vocabulary for one editor's history.
struct EditorDocument {
  std::string editor_id;
  std::vector<int> counts;  // length kVocabularySize
  long long total = 0;
};

EditorDocument make_editor_document(std::string editor_id,
                                    std::vector<int> counts);

EditorDocument editor_document(std::string editor_id,
                               std::span<const Revision> revisions);

}  // namespace revroles
