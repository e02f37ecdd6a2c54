#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "revroles/lda.hpp"
#include "revroles/synth.hpp"
#include "revroles/types.hpp"
#include "revroles/validation.hpp"
#include "revroles/vocab.hpp"

namespace revroles {

// Editor documents travel as a single JSON object carrying the
// vocabulary word list for self-description:
//   {"vocabulary": [...63 words...], "documents": [{"editor_id", "counts"}]}
std::string docs_to_json(std::span<const EditorDocument> docs);
std::vector<EditorDocument> docs_from_json(const std::string& json_text,
                                           const std::string& context);
std::vector<EditorDocument> load_docs(const std::filesystem::path& path);
void save_docs(const std::filesystem::path& path,
               std::span<const EditorDocument> docs);

// Model JSON: {hyperparams, vocabulary, phi, theta_train,
// train_log_likelihood}, floats as shortest round-trip decimals.
std::string model_to_json(const LdaModel& model);
LdaModel model_from_json(const std::string& json_text,
                         const std::string& context);
LdaModel load_model(const std::filesystem::path& path);
void save_model(const std::filesystem::path& path, const LdaModel& model);

// Revisions as JSON lines; refs serialize as [paragraph, sentence] or null.
std::string revisions_to_jsonl(std::span<const Revision> revisions);
std::vector<Revision> revisions_from_jsonl(const std::string& text,
                                           const std::string& context);
std::vector<Revision> load_revisions(const std::filesystem::path& path);

std::string truth_to_json(const GroundTruth& truth);
GroundTruth truth_from_json(const std::string& json_text,
                            const std::string& context);

std::string report_to_json(const ValidationReport& report);
ValidationReport report_from_json(const std::string& json_text,
                                  const std::string& context);
ValidationReport load_report(const std::filesystem::path& path);

// theta.csv: editor_id column plus one column per role.
std::string theta_to_csv(std::span<const std::string> editor_ids,
                         const std::vector<std::vector<double>>& theta);

// Role labels: a JSON array of exactly k names.
std::vector<std::string> labels_from_json(const std::string& json_text,
                                          const std::string& context);

}  // namespace revroles
