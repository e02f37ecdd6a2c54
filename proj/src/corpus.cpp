#include "revroles/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "revroles/errors.hpp"
#include "revroles/io.hpp"

namespace revroles {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string_view to_string(Side side) {
  return side == Side::Original ? "original" : "revised";
}

Side side_from_string(std::string_view text) {
  if (text == "original") return Side::Original;
  if (text == "revised") return Side::Revised;
  fail(ErrorCode::Format, "unknown side '" + std::string(text) + "'");
}

double scale_score(double x, double min, double max) {
  if (!(min < max))
    fail(ErrorCode::InvalidRubric,
         "rubric min (" + format_double(min) + ") must be less than max (" +
             format_double(max) + ")");
  return 100.0 * (x - min) / (max - min);
}

Position position_of(int paragraph_index, int paragraph_count) {
  if (paragraph_count < 1)
    fail(ErrorCode::Bounds, "paragraph count must be >= 1");
  if (paragraph_index < 0 || paragraph_index >= paragraph_count)
    fail(ErrorCode::Bounds,
         "paragraph index " + std::to_string(paragraph_index) +
             " out of range for " + std::to_string(paragraph_count) +
             " paragraphs");
  if (paragraph_index == 0) return Position::Beg;
  if (paragraph_index == paragraph_count - 1) return Position::End;
  return Position::Mid;
}

namespace {

const std::vector<std::vector<std::string>>& side_of(const DraftPair& pair,
                                                     Side side) {
  return side == Side::Original ? pair.original : pair.revised;
}

[[noreturn]] void load_fail(const std::string& context,
                            const std::string& message) {
  fail(ErrorCode::Load, context + ": " + message);
}

std::vector<std::vector<std::string>> parse_draft(const ordered_json& node,
                                                  const std::string& context,
                                                  const char* field) {
  if (!node.is_array() || node.empty())
    load_fail(context, std::string(field) + " must be a nonempty array of paragraphs");
  std::vector<std::vector<std::string>> draft;
  draft.reserve(node.size());
  for (const auto& paragraph : node) {
    if (!paragraph.is_array() || paragraph.empty())
      load_fail(context, std::string(field) +
                             " paragraphs must be nonempty arrays of sentences");
    std::vector<std::string> sentences;
    sentences.reserve(paragraph.size());
    for (const auto& sentence : paragraph) {
      if (!sentence.is_string())
        load_fail(context, std::string(field) + " sentences must be strings");
      sentences.push_back(sentence.get<std::string>());
    }
    draft.push_back(std::move(sentences));
  }
  return draft;
}

}  // namespace

void validate_draft_pair(const DraftPair& pair) {
  const std::string context = "essay '" + pair.essay_id + "'";
  if (pair.essay_id.empty()) fail(ErrorCode::Load, "essay_id must be nonempty");
  if (pair.original.empty() || pair.revised.empty())
    load_fail(context, "both drafts need at least one paragraph");
  for (const auto* draft : {&pair.original, &pair.revised})
    for (const auto& paragraph : *draft)
      if (paragraph.empty())
        load_fail(context, "every paragraph needs at least one sentence");

  std::set<std::tuple<Side, int, int>> seen;
  for (const AnnotationRecord& a : pair.annotations) {
    const auto& draft = side_of(pair, a.side);
    if (a.paragraph < 0 || a.paragraph >= static_cast<int>(draft.size()))
      load_fail(context, "annotation paragraph " + std::to_string(a.paragraph) +
                             " out of range on " + std::string(to_string(a.side)) +
                             " draft");
    const auto& sentences = draft[static_cast<std::size_t>(a.paragraph)];
    if (a.sentence < 0 || a.sentence >= static_cast<int>(sentences.size()))
      load_fail(context, "annotation sentence " + std::to_string(a.sentence) +
                             " out of range in " + std::string(to_string(a.side)) +
                             " paragraph " + std::to_string(a.paragraph));
    if (!seen.insert({a.side, a.paragraph, a.sentence}).second)
      load_fail(context, "duplicate annotation for " +
                             std::string(to_string(a.side)) + " sentence " +
                             to_string(SentenceRef{a.paragraph, a.sentence}) +
                             " (one purpose per revision)");
  }
}

DraftPair parse_draft_pair(const std::string& json_text,
                           const std::string& context) {
  ordered_json doc = ordered_json::parse(json_text, nullptr, false);
  if (doc.is_discarded()) load_fail(context, "malformed JSON");
  if (!doc.is_object()) load_fail(context, "essay file must be a JSON object");

  DraftPair pair;
  if (!doc.contains("essay_id") || !doc["essay_id"].is_string())
    load_fail(context, "missing string field essay_id");
  pair.essay_id = doc["essay_id"].get<std::string>();
  const std::string essay_context = context + " (essay '" + pair.essay_id + "')";

  if (!doc.contains("original") || !doc.contains("revised"))
    load_fail(essay_context, "missing original or revised draft");
  pair.original = parse_draft(doc["original"], essay_context, "original");
  pair.revised = parse_draft(doc["revised"], essay_context, "revised");

  if (doc.contains("annotations")) {
    if (!doc["annotations"].is_array())
      load_fail(essay_context, "annotations must be an array");
    for (const auto& node : doc["annotations"]) {
      if (!node.is_object() || !node.contains("side") ||
          !node.contains("paragraph") || !node.contains("sentence") ||
          !node.contains("purpose"))
        load_fail(essay_context,
                  "annotations need side, paragraph, sentence, purpose");
      AnnotationRecord record;
      if (!node["side"].is_string())
        load_fail(essay_context, "annotation side must be a string");
      record.side = [&] {
        try {
          return side_from_string(node["side"].get<std::string>());
        } catch (const Error& e) {
          load_fail(essay_context, e.what());
        }
      }();
      if (!node["paragraph"].is_number_integer() ||
          !node["sentence"].is_number_integer())
        load_fail(essay_context, "annotation indices must be integers");
      record.paragraph = node["paragraph"].get<int>();
      record.sentence = node["sentence"].get<int>();
      if (!node["purpose"].is_string())
        load_fail(essay_context, "annotation purpose must be a string");
      const std::string purpose = node["purpose"].get<std::string>();
      const auto parsed = try_purpose_from_string(purpose);
      if (!parsed)
        load_fail(essay_context, "unknown purpose '" + purpose + "'");
      record.purpose = *parsed;
      pair.annotations.push_back(record);
    }
  }

  try {
    validate_draft_pair(pair);
  } catch (const Error& e) {
    load_fail(context, e.what());
  }
  return pair;
}

namespace {

double parse_number(std::string_view text, const std::string& context,
                    const char* field) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end)
    load_fail(context, std::string(field) + " is not a number: '" +
                           std::string(text) + "'");
  return value;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.emplace_back(line.substr(start));
      break;
    }
    fields.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

constexpr const char* kScoreHeader =
    "essay_id,score1_raw,score2_raw,rubric_min,rubric_max";

}  // namespace

std::vector<ScoreRecord> parse_scores(const std::string& csv_text,
                                      const std::string& context,
                                      ScaleMode mode) {
  std::vector<ScoreRecord> records;
  std::size_t pos = 0;
  int line_no = 0;
  bool saw_header = false;
  std::unordered_set<std::string> seen_ids;
  while (pos <= csv_text.size()) {
    std::size_t eol = csv_text.find('\n', pos);
    if (eol == std::string::npos) eol = csv_text.size();
    std::string_view line(csv_text.data() + pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != kScoreHeader)
        load_fail(context, "first line must be the header '" +
                               std::string(kScoreHeader) + "'");
      saw_header = true;
      continue;
    }
    const std::string line_context =
        context + " line " + std::to_string(line_no);
    const auto fields = split_csv_line(line);
    if (fields.size() != 5)
      load_fail(line_context, "expected 5 comma-separated fields");
    ScoreRecord record;
    record.essay_id = fields[0];
    if (record.essay_id.empty()) load_fail(line_context, "empty essay_id");
    if (!seen_ids.insert(record.essay_id).second)
      load_fail(line_context, "duplicate score row for essay '" +
                                  record.essay_id + "'");
    record.score1_raw = parse_number(fields[1], line_context, "score1_raw");
    record.score2_raw = parse_number(fields[2], line_context, "score2_raw");
    record.rubric_min = parse_number(fields[3], line_context, "rubric_min");
    record.rubric_max = parse_number(fields[4], line_context, "rubric_max");
    records.push_back(record);
  }

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  if (mode == ScaleMode::Observed) {
    for (const ScoreRecord& r : records) {
      lo = std::min({lo, r.score1_raw, r.score2_raw});
      hi = std::max({hi, r.score1_raw, r.score2_raw});
    }
  }
  for (ScoreRecord& r : records) {
    const std::string row_context = context + " essay '" + r.essay_id + "'";
    try {
      if (mode == ScaleMode::Rubric) {
        r.score1 = scale_score(r.score1_raw, r.rubric_min, r.rubric_max);
        r.score2 = scale_score(r.score2_raw, r.rubric_min, r.rubric_max);
      } else {
        r.score1 = scale_score(r.score1_raw, lo, hi);
        r.score2 = scale_score(r.score2_raw, lo, hi);
      }
    } catch (const Error& e) {
      fail(e.code(), row_context + ": " + e.what());
    }
  }
  return records;
}

std::vector<ScoreRecord> load_scores(const fs::path& csv_path, ScaleMode mode) {
  return parse_scores(read_file(csv_path), "scores file '" +
                                               csv_path.filename().string() +
                                               "'", mode);
}

std::vector<CorpusEntry> load_corpus(const fs::path& directory,
                                     ScaleMode mode) {
  if (!fs::exists(directory))
    fail(ErrorCode::Io, "corpus directory '" + directory.string() +
                            "' does not exist");
  if (!fs::is_directory(directory))
    fail(ErrorCode::Io, "'" + directory.string() + "' is not a directory");

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  std::vector<CorpusEntry> entries;
  std::unordered_map<std::string, std::size_t> by_id;
  for (const fs::path& file : files) {
    const std::string context = "essay file '" + file.filename().string() + "'";
    CorpusEntry entry;
    entry.drafts = parse_draft_pair(read_file(file), context);
    if (by_id.contains(entry.drafts.essay_id))
      load_fail(context, "duplicate essay_id '" + entry.drafts.essay_id + "'");
    by_id.emplace(entry.drafts.essay_id, entries.size());
    entries.push_back(std::move(entry));
  }

  const fs::path scores_path = directory / "scores.csv";
  if (fs::exists(scores_path)) {
    for (const ScoreRecord& record : load_scores(scores_path, mode)) {
      auto it = by_id.find(record.essay_id);
      if (it == by_id.end())
        fail(ErrorCode::Load, "scores.csv names unknown essay '" +
                                  record.essay_id + "'");
      entries[it->second].score = record;
    }
  }
  return entries;
}

std::string draft_pair_to_json(const DraftPair& pair) {
  ordered_json doc;
  doc["essay_id"] = pair.essay_id;
  doc["original"] = pair.original;
  doc["revised"] = pair.revised;
  ordered_json annotations = ordered_json::array();
  for (const AnnotationRecord& a : pair.annotations) {
    ordered_json node;
    node["side"] = to_string(a.side);
    node["paragraph"] = a.paragraph;
    node["sentence"] = a.sentence;
    node["purpose"] = to_string(a.purpose);
    annotations.push_back(std::move(node));
  }
  doc["annotations"] = std::move(annotations);
  return doc.dump(2) + "\n";
}

std::string scores_to_csv(const std::vector<ScoreRecord>& scores) {
  std::string out(kScoreHeader);
  out += '\n';
  for (const ScoreRecord& r : scores) {
    out += r.essay_id;
    out += ',';
    out += format_double(r.score1_raw);
    out += ',';
    out += format_double(r.score2_raw);
    out += ',';
    out += format_double(r.rubric_min);
    out += ',';
    out += format_double(r.rubric_max);
    out += '\n';
  }
  return out;
}

void save_corpus(const fs::path& directory,
                 const std::vector<CorpusEntry>& entries) {
  std::error_code ec;
  fs::create_directories(directory, ec);
  std::vector<ScoreRecord> scores;
  for (const CorpusEntry& entry : entries) {
    atomic_write_file(directory / (entry.drafts.essay_id + ".json"),
                      draft_pair_to_json(entry.drafts));
    if (entry.score) scores.push_back(*entry.score);
  }
  if (!scores.empty())
    atomic_write_file(directory / "scores.csv", scores_to_csv(scores));
}

}  // namespace revroles
