#include "revroles/serialization.hpp"

#include <cmath>

#include <json.hpp>

#include "revroles/errors.hpp"
#include "revroles/io.hpp"

namespace revroles {

using ordered_json = nlohmann::ordered_json;

namespace {

[[noreturn]] void format_fail(const std::string& context,
                              const std::string& message) {
  fail(ErrorCode::Format, context + ": " + message);
}

ordered_json parse_json(const std::string& text, const std::string& context) {
  ordered_json doc = ordered_json::parse(text, nullptr, false);
  if (doc.is_discarded()) format_fail(context, "malformed JSON");
  return doc;
}

// The canonical word list; any file deviating from it is rejected.
const std::vector<std::string>& canonical_words() {
  static const std::vector<std::string> words = [] {
    const Vocabulary vocabulary;
    std::vector<std::string> out;
    for (const RevisionWord& w : vocabulary.words()) out.push_back(w.text);
    return out;
  }();
  return words;
}

void check_vocabulary_field(const ordered_json& node,
                            const std::string& context) {
  if (!node.is_array() ||
      node.size() != static_cast<std::size_t>(kVocabularySize))
    fail(ErrorCode::VocabularyMismatch,
         context + ": vocabulary must list exactly 63 words");
  const auto& words = canonical_words();
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (!node[i].is_string() || node[i].get<std::string>() != words[i])
      fail(ErrorCode::VocabularyMismatch,
           context + ": vocabulary word " + std::to_string(i) +
               " does not match the canonical list");
  }
}

ordered_json vocabulary_json() {
  ordered_json node = ordered_json::array();
  for (const std::string& w : canonical_words()) node.push_back(w);
  return node;
}

std::vector<std::vector<double>> matrix_from_json(const ordered_json& node,
                                                  const std::string& context,
                                                  const char* field) {
  if (!node.is_array())
    format_fail(context, std::string(field) + " must be an array of rows");
  std::vector<std::vector<double>> matrix;
  matrix.reserve(node.size());
  for (const auto& row : node) {
    if (!row.is_array())
      format_fail(context, std::string(field) + " rows must be arrays");
    std::vector<double> values;
    values.reserve(row.size());
    for (const auto& v : row) {
      if (!v.is_number())
        format_fail(context, std::string(field) + " entries must be numbers");
      values.push_back(v.get<double>());
    }
    matrix.push_back(std::move(values));
  }
  return matrix;
}

void check_stochastic(const std::vector<std::vector<double>>& matrix,
                      std::size_t width, const std::string& context,
                      const char* field) {
  for (const auto& row : matrix) {
    if (row.size() != width)
      format_fail(context, std::string(field) + " rows must have length " +
                               std::to_string(width));
    double sum = 0.0;
    for (double v : row) {
      if (!(v > 0.0))
        format_fail(context,
                    std::string(field) + " entries must be strictly positive");
      sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-6)
      format_fail(context, std::string(field) + " rows must sum to 1");
  }
}

}  // namespace

std::string docs_to_json(std::span<const EditorDocument> docs) {
  ordered_json doc;
  doc["vocabulary"] = vocabulary_json();
  ordered_json documents = ordered_json::array();
  for (const EditorDocument& d : docs) {
    ordered_json node;
    node["editor_id"] = d.editor_id;
    node["counts"] = d.counts;
    documents.push_back(std::move(node));
  }
  doc["documents"] = std::move(documents);
  return doc.dump(2) + "\n";
}

std::vector<EditorDocument> docs_from_json(const std::string& json_text,
                                           const std::string& context) {
  const ordered_json doc = parse_json(json_text, context);
  if (!doc.is_object() || !doc.contains("vocabulary") ||
      !doc.contains("documents"))
    format_fail(context, "expected an object with vocabulary and documents");
  check_vocabulary_field(doc["vocabulary"], context);
  if (!doc["documents"].is_array())
    format_fail(context, "documents must be an array");

  std::vector<EditorDocument> docs;
  for (const auto& node : doc["documents"]) {
    if (!node.is_object() || !node.contains("editor_id") ||
        !node.contains("counts") || !node["editor_id"].is_string() ||
        !node["counts"].is_array())
      format_fail(context, "documents need editor_id and counts");
    std::vector<int> counts;
    counts.reserve(node["counts"].size());
    for (const auto& c : node["counts"]) {
      if (!c.is_number_integer() || c.get<long long>() < 0)
        format_fail(context, "counts must be nonnegative integers");
      counts.push_back(c.get<int>());
    }
    try {
      docs.push_back(make_editor_document(node["editor_id"].get<std::string>(),
                                          std::move(counts)));
    } catch (const Error& e) {
      fail(e.code(), context + ": " + e.what());
    }
  }
  return docs;
}

std::vector<EditorDocument> load_docs(const std::filesystem::path& path) {
  return docs_from_json(read_file(path),
                        "docs file '" + path.filename().string() + "'");
}

void save_docs(const std::filesystem::path& path,
               std::span<const EditorDocument> docs) {
  atomic_write_file(path, docs_to_json(docs));
}

std::string model_to_json(const LdaModel& model) {
  ordered_json doc;
  ordered_json h;
  h["k"] = model.hyperparams.k;
  h["alpha"] = model.hyperparams.alpha;
  h["beta"] = model.hyperparams.beta;
  h["sweeps"] = model.hyperparams.sweeps;
  h["burn_in"] = model.hyperparams.burn_in;
  h["seed"] = model.hyperparams.seed;
  h["average"] = model.hyperparams.average;
  doc["hyperparams"] = std::move(h);
  doc["vocabulary"] = vocabulary_json();
  doc["phi"] = model.phi;
  doc["theta_train"] = model.theta_train;
  doc["train_log_likelihood"] = model.train_log_likelihood;
  return doc.dump(2) + "\n";
}

LdaModel model_from_json(const std::string& json_text,
                         const std::string& context) {
  const ordered_json doc = parse_json(json_text, context);
  if (!doc.is_object() || !doc.contains("hyperparams") ||
      !doc.contains("vocabulary") || !doc.contains("phi") ||
      !doc.contains("theta_train") || !doc.contains("train_log_likelihood"))
    format_fail(context,
                "model needs hyperparams, vocabulary, phi, theta_train, "
                "train_log_likelihood");

  LdaModel model;
  const auto& h = doc["hyperparams"];
  if (!h.is_object() || !h.contains("k") || !h.contains("alpha") ||
      !h.contains("beta") || !h.contains("sweeps") || !h.contains("burn_in") ||
      !h.contains("seed"))
    format_fail(context, "hyperparams are incomplete");
  try {
    model.hyperparams.k = h["k"].get<int>();
    model.hyperparams.alpha = h["alpha"].get<double>();
    model.hyperparams.beta = h["beta"].get<double>();
    model.hyperparams.sweeps = h["sweeps"].get<int>();
    model.hyperparams.burn_in = h["burn_in"].get<int>();
    model.hyperparams.seed = h["seed"].get<std::uint64_t>();
    model.hyperparams.average =
        h.contains("average") && h["average"].get<bool>();
  } catch (const ordered_json::exception& e) {
    format_fail(context, e.what());
  }
  try {
    validate_hyperparams(model.hyperparams);
  } catch (const Error& e) {
    fail(e.code(), context + ": " + e.what());
  }

  check_vocabulary_field(doc["vocabulary"], context);
  model.phi = matrix_from_json(doc["phi"], context, "phi");
  if (model.phi.size() != static_cast<std::size_t>(model.hyperparams.k))
    format_fail(context, "phi must have k rows");
  check_stochastic(model.phi, static_cast<std::size_t>(kVocabularySize),
                   context, "phi");
  model.theta_train = matrix_from_json(doc["theta_train"], context,
                                       "theta_train");
  check_stochastic(model.theta_train,
                   static_cast<std::size_t>(model.hyperparams.k), context,
                   "theta_train");
  if (!doc["train_log_likelihood"].is_number())
    format_fail(context, "train_log_likelihood must be a number");
  model.train_log_likelihood = doc["train_log_likelihood"].get<double>();
  return model;
}

LdaModel load_model(const std::filesystem::path& path) {
  return model_from_json(read_file(path),
                         "model file '" + path.filename().string() + "'");
}

void save_model(const std::filesystem::path& path, const LdaModel& model) {
  atomic_write_file(path, model_to_json(model));
}

namespace {

ordered_json ref_to_json(const std::optional<SentenceRef>& ref) {
  if (!ref) return nullptr;
  return ordered_json::array({ref->paragraph, ref->sentence});
}

std::optional<SentenceRef> ref_from_json(const ordered_json& node,
                                         const std::string& context) {
  if (node.is_null()) return std::nullopt;
  if (!node.is_array() || node.size() != 2 || !node[0].is_number_integer() ||
      !node[1].is_number_integer())
    format_fail(context, "refs must be [paragraph, sentence] or null");
  return SentenceRef{node[0].get<int>(), node[1].get<int>()};
}

}  // namespace

std::string revisions_to_jsonl(std::span<const Revision> revisions) {
  std::string out;
  for (const Revision& r : revisions) {
    ordered_json node;
    node["essay_id"] = r.essay_id;
    node["operation"] = to_string(r.operation);
    node["purpose"] = to_string(r.purpose);
    node["position"] = to_string(r.position);
    node["original_ref"] = ref_to_json(r.original_ref);
    node["revised_ref"] = ref_to_json(r.revised_ref);
    out += node.dump();
    out += '\n';
  }
  return out;
}

std::vector<Revision> revisions_from_jsonl(const std::string& text,
                                           const std::string& context) {
  std::vector<Revision> revisions;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    const std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;
    const std::string line_context = context + " line " + std::to_string(line_no);
    const ordered_json node = parse_json(line, line_context);
    if (!node.is_object() || !node.contains("essay_id") ||
        !node.contains("operation") || !node.contains("purpose") ||
        !node.contains("position"))
      format_fail(line_context,
                  "revisions need essay_id, operation, purpose, position");
    Revision r;
    try {
      r.essay_id = node["essay_id"].get<std::string>();
      r.operation = operation_from_string(node["operation"].get<std::string>());
      r.purpose = purpose_from_string(node["purpose"].get<std::string>());
      r.position = position_from_string(node["position"].get<std::string>());
    } catch (const ordered_json::exception& e) {
      format_fail(line_context, e.what());
    } catch (const Error& e) {
      fail(e.code(), line_context + ": " + e.what());
    }
    if (node.contains("original_ref"))
      r.original_ref = ref_from_json(node["original_ref"], line_context);
    if (node.contains("revised_ref"))
      r.revised_ref = ref_from_json(node["revised_ref"], line_context);
    if (is_surface(r.purpose) && r.operation != Operation::Modify)
      fail(ErrorCode::TaxonomyViolation,
           line_context + ": surface purpose " +
               std::string(to_string(r.purpose)) + " with " +
               std::string(to_string(r.operation)));
    revisions.push_back(std::move(r));
  }
  return revisions;
}

std::vector<Revision> load_revisions(const std::filesystem::path& path) {
  return revisions_from_jsonl(
      read_file(path), "revisions file '" + path.filename().string() + "'");
}

std::string truth_to_json(const GroundTruth& truth) {
  ordered_json doc;
  doc["alpha_true"] = truth.alpha_true;
  doc["phi_true"] = truth.phi_true;
  doc["theta_true"] = truth.theta_true;
  doc["doc_lengths"] = truth.doc_lengths;
  return doc.dump(2) + "\n";
}

GroundTruth truth_from_json(const std::string& json_text,
                            const std::string& context) {
  const ordered_json doc = parse_json(json_text, context);
  if (!doc.is_object() || !doc.contains("alpha_true") ||
      !doc.contains("phi_true") || !doc.contains("doc_lengths"))
    format_fail(context, "truth needs alpha_true, phi_true, doc_lengths");
  GroundTruth truth;
  if (!doc["alpha_true"].is_number())
    format_fail(context, "alpha_true must be a number");
  truth.alpha_true = doc["alpha_true"].get<double>();
  truth.phi_true = matrix_from_json(doc["phi_true"], context, "phi_true");
  if (doc.contains("theta_true"))
    truth.theta_true =
        matrix_from_json(doc["theta_true"], context, "theta_true");
  if (!doc["doc_lengths"].is_array())
    format_fail(context, "doc_lengths must be an array");
  for (const auto& v : doc["doc_lengths"]) {
    if (!v.is_number_integer())
      format_fail(context, "doc_lengths must be integers");
    truth.doc_lengths.push_back(v.get<int>());
  }
  return truth;
}

std::string report_to_json(const ValidationReport& report) {
  ordered_json doc;
  doc["n"] = report.n;
  doc["k"] = report.k;

  ordered_json score;
  if (report.score_corr.r && report.score_corr.p) {
    score["r"] = *report.score_corr.r;
    score["p"] = *report.score_corr.p;
  } else {
    score["flag"] = report.score_corr.flag;
  }
  doc["score_corr"] = std::move(score);

  ordered_json purposes = ordered_json::array();
  for (const PurposeFit& fit : report.purpose_r2) {
    ordered_json node;
    node["purpose"] = to_string(fit.purpose);
    if (fit.fit) {
      node["r_squared"] = fit.fit->r_squared;
      node["p_value"] = fit.p_value;
      node["n"] = fit.fit->n;
    } else {
      node["flag"] = fit.flag;
    }
    purposes.push_back(std::move(node));
  }
  doc["purpose_r2"] = std::move(purposes);

  ordered_json roles = ordered_json::array();
  for (const RolePartialEntry& entry : report.role_partial) {
    ordered_json node;
    node["role"] = entry.role;
    node["label"] = entry.label;
    if (entry.result) {
      node["r"] = entry.result->r;
      node["p"] = entry.result->p_value;
      node["df"] = entry.result->df;
    } else {
      node["flag"] = entry.flag;
    }
    roles.push_back(std::move(node));
  }
  doc["role_partial"] = std::move(roles);

  ordered_json skipped = ordered_json::array();
  for (const SkippedPurpose& s : report.skipped_purposes) {
    ordered_json node;
    node["purpose"] = to_string(s.purpose);
    node["reason"] = s.reason;
    skipped.push_back(std::move(node));
  }
  doc["skipped_purposes"] = std::move(skipped);
  return doc.dump(2) + "\n";
}

ValidationReport report_from_json(const std::string& json_text,
                                  const std::string& context) {
  const ordered_json doc = parse_json(json_text, context);
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("k") ||
      !doc.contains("score_corr") || !doc.contains("purpose_r2") ||
      !doc.contains("role_partial") || !doc.contains("skipped_purposes"))
    format_fail(context, "incomplete validation report");

  ValidationReport report;
  try {
    report.n = doc["n"].get<int>();
    report.k = doc["k"].get<int>();

    const auto& score = doc["score_corr"];
    if (score.contains("r") && score.contains("p")) {
      report.score_corr.r = score["r"].get<double>();
      report.score_corr.p = score["p"].get<double>();
    } else if (score.contains("flag")) {
      report.score_corr.flag = score["flag"].get<std::string>();
    } else {
      format_fail(context, "score_corr needs r/p or flag");
    }
    for (const auto& node : doc["purpose_r2"]) {
      PurposeFit fit;
      fit.purpose = purpose_from_string(node.at("purpose").get<std::string>());
      if (node.contains("r_squared")) {
        RegressionResult regression;
        regression.r_squared = node["r_squared"].get<double>();
        regression.n = node.contains("n") ? node["n"].get<int>() : report.n;
        fit.p_value = node.at("p_value").get<double>();
        fit.fit = std::move(regression);
      } else {
        fit.flag = node.at("flag").get<std::string>();
      }
      report.purpose_r2.push_back(std::move(fit));
    }
    for (const auto& node : doc["role_partial"]) {
      RolePartialEntry entry;
      entry.role = node.at("role").get<int>();
      entry.label = node.at("label").get<std::string>();
      if (node.contains("r")) {
        PartialCorrResult result;
        result.r = node["r"].get<double>();
        result.p_value = node.at("p").get<double>();
        result.df = node.contains("df") ? node["df"].get<int>() : 0;
        entry.result = result;
      } else {
        entry.flag = node.at("flag").get<std::string>();
      }
      report.role_partial.push_back(std::move(entry));
    }
    for (const auto& node : doc["skipped_purposes"]) {
      SkippedPurpose s;
      s.purpose = purpose_from_string(node.at("purpose").get<std::string>());
      s.reason = node.at("reason").get<std::string>();
      report.skipped_purposes.push_back(std::move(s));
    }
  } catch (const ordered_json::exception& e) {
    format_fail(context, e.what());
  } catch (const Error& e) {
    fail(e.code(), context + ": " + e.what());
  }
  return report;
}

ValidationReport load_report(const std::filesystem::path& path) {
  return report_from_json(read_file(path),
                          "report file '" + path.filename().string() + "'");
}

std::string theta_to_csv(std::span<const std::string> editor_ids,
                         const std::vector<std::vector<double>>& theta) {
  if (editor_ids.size() != theta.size())
    fail(ErrorCode::Config, "editor id and theta row counts differ");
  const std::size_t k = theta.empty() ? 0 : theta[0].size();
  std::string out = "editor_id";
  for (std::size_t i = 0; i < k; ++i) out += ",theta_" + std::to_string(i);
  out += '\n';
  for (std::size_t d = 0; d < theta.size(); ++d) {
    out += editor_ids[d];
    for (double v : theta[d]) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

std::vector<std::string> labels_from_json(const std::string& json_text,
                                          const std::string& context) {
  const ordered_json doc = parse_json(json_text, context);
  if (!doc.is_array())
    format_fail(context, "labels must be a JSON array of role names");
  std::vector<std::string> labels;
  for (const auto& v : doc) {
    if (!v.is_string()) format_fail(context, "labels must be strings");
    labels.push_back(v.get<std::string>());
  }
  return labels;
}

}  // namespace revroles
