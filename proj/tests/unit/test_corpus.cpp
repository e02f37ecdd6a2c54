#include <doctest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "revroles/corpus.hpp"
#include "revroles/errors.hpp"
#include "revroles/io.hpp"

using namespace revroles;
namespace fs = std::filesystem;

namespace {

fs::path fresh_temp_dir(const std::string& tag) {
  const fs::path dir =
      fs::temp_directory_path() / ("revroles_test_" + tag + "_" +
                                   std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("scale_score maps rubric endpoints to 0 and 100") {
  CHECK(scale_score(0, 0, 5) == doctest::Approx(0.0));
  CHECK(scale_score(5, 0, 5) == doctest::Approx(100.0));
  CHECK(scale_score(3, 0, 5) == doctest::Approx(60.0));
  CHECK_THROWS_AS(scale_score(1, 5, 5), Error);
  CHECK_THROWS_AS(scale_score(1, 6, 5), Error);
}

TEST_CASE("scale_score is affine and monotone") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const double min = static_cast<double>(rng() % 100);
    const double max = min + 1.0 + static_cast<double>(rng() % 50);
    const double a = min + (max - min) * (static_cast<double>(rng() % 1000) / 1000.0);
    const double b = min + (max - min) * (static_cast<double>(rng() % 1000) / 1000.0);
    const double mid = scale_score((a + b) / 2.0, min, max);
    const double avg = (scale_score(a, min, max) + scale_score(b, min, max)) / 2.0;
    CHECK(mid == doctest::Approx(avg).epsilon(1e-9));
    CHECK(scale_score(min, min, max) == doctest::Approx(0.0));
    CHECK(scale_score(max, min, max) == doctest::Approx(100.0));
    if (a < b) CHECK(scale_score(a, min, max) <= scale_score(b, min, max));
  }
}

TEST_CASE("position_of applies the first/last rule") {
  CHECK(position_of(0, 5) == Position::Beg);
  CHECK(position_of(4, 5) == Position::End);
  CHECK(position_of(2, 5) == Position::Mid);
  CHECK(position_of(0, 1) == Position::Beg);  // single paragraph -> beg
  CHECK(position_of(0, 2) == Position::Beg);
  CHECK(position_of(1, 2) == Position::End);
  CHECK_THROWS_AS(position_of(5, 5), Error);
  CHECK_THROWS_AS(position_of(-1, 5), Error);
}

TEST_CASE("position_of partitions indices: one beg, one end, rest mid") {
  for (int count = 2; count <= 12; ++count) {
    int beg = 0;
    int end = 0;
    int mid = 0;
    for (int i = 0; i < count; ++i) {
      switch (position_of(i, count)) {
        case Position::Beg: ++beg; break;
        case Position::End: ++end; break;
        case Position::Mid: ++mid; break;
      }
    }
    CHECK(beg == 1);
    CHECK(end == 1);
    CHECK(mid == count - 2);
  }
}

TEST_CASE("load_corpus of an empty directory is empty") {
  const fs::path dir = fresh_temp_dir("empty_corpus");
  CHECK(load_corpus(dir).empty());
  fs::remove_all(dir);
}

TEST_CASE("load_corpus reads the bundled toy corpus") {
  const auto entries = load_corpus(fs::path(REVROLES_TOY_CORPUS));
  REQUIRE(entries.size() == 3);
  CHECK(entries[0].drafts.essay_id == "essay_001");
  CHECK(entries[1].drafts.essay_id == "essay_002");
  CHECK(entries[2].drafts.essay_id == "essay_003");
  REQUIRE(entries[0].score.has_value());
  REQUIRE(entries[1].score.has_value());
  CHECK_FALSE(entries[2].score.has_value());
  CHECK(entries[0].score->score1 == doctest::Approx(60.0));
  CHECK(entries[0].score->score2 == doctest::Approx(80.0));
  CHECK(entries[1].score->score1 == doctest::Approx(40.0));
  CHECK(entries[0].drafts.original.size() == 3);
  CHECK(entries[0].drafts.annotations.size() == 4);
}

TEST_CASE("load_corpus rejects unknown purposes naming the essay") {
  const fs::path dir = fresh_temp_dir("bad_purpose");
  atomic_write_file(dir / "bad.json", R"({
    "essay_id": "essay_bad",
    "original": [["one sentence."]],
    "revised": [["one sentence!"]],
    "annotations": [{"side": "revised", "paragraph": 0, "sentence": 0, "purpose": "Klaims"}]
  })");
  CHECK_THROWS_WITH_AS(static_cast<void>(load_corpus(dir)),
                       doctest::Contains("essay_bad"), Error);
  CHECK_THROWS_WITH_AS(static_cast<void>(load_corpus(dir)),
                       doctest::Contains("Klaims"), Error);
  fs::remove_all(dir);
}

TEST_CASE("load_corpus rejects malformed JSON and bad indices") {
  const fs::path dir = fresh_temp_dir("bad_json");
  atomic_write_file(dir / "broken.json", "{not json");
  CHECK_THROWS_AS(static_cast<void>(load_corpus(dir)), Error);
  fs::remove_all(dir);

  const fs::path dir2 = fresh_temp_dir("bad_index");
  atomic_write_file(dir2 / "oob.json", R"({
    "essay_id": "essay_oob",
    "original": [["a."]],
    "revised": [["a!"]],
    "annotations": [{"side": "revised", "paragraph": 3, "sentence": 0, "purpose": "Claims"}]
  })");
  CHECK_THROWS_WITH_AS(static_cast<void>(load_corpus(dir2)),
                       doctest::Contains("out of range"), Error);
  fs::remove_all(dir2);
}

TEST_CASE("load_corpus rejects duplicate annotations of one sentence") {
  const fs::path dir = fresh_temp_dir("dup_annotation");
  atomic_write_file(dir / "dup.json", R"({
    "essay_id": "essay_dup",
    "original": [["a."]],
    "revised": [["a!"]],
    "annotations": [
      {"side": "revised", "paragraph": 0, "sentence": 0, "purpose": "Claims"},
      {"side": "revised", "paragraph": 0, "sentence": 0, "purpose": "General"}
    ]
  })");
  CHECK_THROWS_WITH_AS(static_cast<void>(load_corpus(dir)),
                       doctest::Contains("duplicate annotation"), Error);
  fs::remove_all(dir);
}

TEST_CASE("corpus save/load round-trips byte-identically") {
  const auto entries = load_corpus(fs::path(REVROLES_TOY_CORPUS));
  const fs::path dir = fresh_temp_dir("roundtrip_a");
  save_corpus(dir, entries);
  const auto reloaded = load_corpus(dir);
  const fs::path dir2 = fresh_temp_dir("roundtrip_b");
  save_corpus(dir2, reloaded);
  for (const auto& entry : entries) {
    const auto name = entry.drafts.essay_id + ".json";
    CHECK(read_file(dir / name) == read_file(dir2 / name));
  }
  CHECK(read_file(dir / "scores.csv") == read_file(dir2 / "scores.csv"));
  fs::remove_all(dir);
  fs::remove_all(dir2);
}

TEST_CASE("observed scaling pools raw scores") {
  const std::string csv =
      "essay_id,score1_raw,score2_raw,rubric_min,rubric_max\n"
      "a,2,4,0,5\n"
      "b,3,6,0,5\n";
  const auto records = parse_scores(csv, "test", ScaleMode::Observed);
  REQUIRE(records.size() == 2);
  // observed bounds are [2, 6]
  CHECK(records[0].score1 == doctest::Approx(0.0));
  CHECK(records[1].score2 == doctest::Approx(100.0));
  CHECK(records[0].score2 == doctest::Approx(50.0));
}
