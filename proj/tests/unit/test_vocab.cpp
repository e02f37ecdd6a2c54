#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "revroles/errors.hpp"
#include "revroles/vocab.hpp"

using namespace revroles;

TEST_CASE("vocabulary has exactly 63 words, 54 content and 9 surface") {
  const Vocabulary vocabulary = build_vocabulary();
  CHECK(vocabulary.size() == 63);
  int content = 0;
  int surface = 0;
  for (const RevisionWord& w : vocabulary.words())
    (is_surface(w.purpose) ? surface : content) += 1;
  CHECK(content == 54);
  CHECK(surface == 9);
}

TEST_CASE("vocabulary contains the expected words and no illegal ones") {
  const Vocabulary vocabulary = build_vocabulary();
  CHECK(vocabulary.contains("+Reasoning_mid"));
  CHECK(vocabulary.contains("-General_end"));
  CHECK(vocabulary.contains("Grammar_mid"));
  CHECK(vocabulary.contains("Claims_beg"));
  CHECK_FALSE(vocabulary.contains("+Grammar_mid"));
  CHECK_FALSE(vocabulary.contains("-Organization_beg"));
  CHECK_FALSE(vocabulary.contains("Claims"));
}

TEST_CASE("vocabulary ids are dense and deterministic") {
  const Vocabulary a = build_vocabulary();
  const Vocabulary b = build_vocabulary();
  REQUIRE(a.size() == b.size());
  std::set<std::string> seen;
  for (int id = 0; id < a.size(); ++id) {
    CHECK(a.word(id).text == b.word(id).text);
    CHECK(a.id_of(a.word(id).text) == id);
    seen.insert(a.word(id).text);
  }
  CHECK(seen.size() == 63);
}

TEST_CASE("every vocabulary word parses back to its components") {
  const Vocabulary vocabulary = build_vocabulary();
  for (const RevisionWord& w : vocabulary.words()) {
    const RevisionWord parsed = parse_revision_word(w.text);
    CHECK(parsed.operation == w.operation);
    CHECK(parsed.purpose == w.purpose);
    CHECK(parsed.position == w.position);
  }
  CHECK_THROWS_AS(parse_revision_word("+Grammar_mid"), Error);
  CHECK_THROWS_AS(parse_revision_word("Klaims_beg"), Error);
  CHECK_THROWS_AS(parse_revision_word("Claims"), Error);
}

TEST_CASE("encode_revision follows the sign convention") {
  Revision r;
  r.operation = Operation::Modify;
  r.purpose = Purpose::Claims;
  r.position = Position::Beg;
  CHECK(encode_revision(r).text == "Claims_beg");

  r.operation = Operation::Add;
  r.purpose = Purpose::Reasoning;
  r.position = Position::Mid;
  CHECK(encode_revision(r).text == "+Reasoning_mid");

  r.operation = Operation::Delete;
  r.purpose = Purpose::General;
  r.position = Position::End;
  CHECK(encode_revision(r).text == "-General_end");

  r.operation = Operation::Add;
  r.purpose = Purpose::Grammar;
  CHECK_THROWS_AS(encode_revision(r), Error);
}

namespace {

Revision make_revision(Operation op, Purpose purpose, Position pos) {
  Revision r;
  r.essay_id = "e";
  r.operation = op;
  r.purpose = purpose;
  r.position = pos;
  return r;
}

}  // namespace

TEST_CASE("editor_document counts revisions as a bag of words") {
  const Vocabulary vocabulary = build_vocabulary();

  const EditorDocument empty = editor_document("e", {});
  CHECK(empty.total == 0);
  CHECK(std::all_of(empty.counts.begin(), empty.counts.end(),
                    [](int c) { return c == 0; }));

  std::vector<Revision> revisions(
      3, make_revision(Operation::Modify, Purpose::Claims, Position::Beg));
  const EditorDocument doc = editor_document("e", revisions);
  CHECK(doc.total == 3);
  CHECK(doc.counts[static_cast<std::size_t>(vocabulary.id_of("Claims_beg"))] == 3);
  CHECK(std::count(doc.counts.begin(), doc.counts.end(), 0) == 62);
}

TEST_CASE("editor_document is order-insensitive and totals add up") {
  std::mt19937_64 rng(11);
  std::vector<Revision> revisions;
  const Vocabulary vocabulary = build_vocabulary();
  for (int i = 0; i < 40; ++i) {
    const RevisionWord& w =
        vocabulary.word(static_cast<int>(rng() % 63));
    revisions.push_back(make_revision(w.operation, w.purpose, w.position));
  }
  const EditorDocument sorted_doc = editor_document("e", revisions);
  std::shuffle(revisions.begin(), revisions.end(), rng);
  const EditorDocument shuffled_doc = editor_document("e", revisions);
  CHECK(sorted_doc.counts == shuffled_doc.counts);
  CHECK(sorted_doc.total == 40);

  // per-purpose sums equal the document total
  long long by_purpose = 0;
  for (Purpose p : all_purposes()) {
    for (int id = 0; id < 63; ++id)
      if (vocabulary.word(id).purpose == p)
        by_purpose += sorted_doc.counts[static_cast<std::size_t>(id)];
  }
  CHECK(by_purpose == sorted_doc.total);
}
