// revroles: mine editor roles from essay revision histories.
//
// Pipeline: align -> encode -> train/sweep -> topics/infer -> validate
// -> report, plus synth for generating test corpora. All outputs are
// written atomically; all randomness flows from --seed.

#include <cstdint>
#include <filesystem>
#include <future>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "revroles/alignment.hpp"
#include "revroles/corpus.hpp"
#include "revroles/errors.hpp"
#include "revroles/io.hpp"
#include "revroles/lda.hpp"
#include "revroles/logging.hpp"
#include "revroles/report.hpp"
#include "revroles/rng.hpp"
#include "revroles/serialization.hpp"
#include "revroles/stats.hpp"
#include "revroles/synth.hpp"
#include "revroles/validation.hpp"
#include "revroles/vocab.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace revroles;

namespace {

ScaleMode parse_scale_mode(const std::string& value) {
  if (value == "rubric") return ScaleMode::Rubric;
  if (value == "observed") return ScaleMode::Observed;
  fail(ErrorCode::Config, "scale mode must be 'rubric' or 'observed'");
}

void run_align(const std::string& corpus_dir, double threshold,
               const std::string& out) {
  const auto entries = load_corpus(corpus_dir);
  std::vector<Revision> revisions;
  for (const CorpusEntry& entry : entries) {
    auto essay_revisions = revisions_for(entry.drafts, threshold);
    log_info("essay '", entry.drafts.essay_id, "': ", essay_revisions.size(),
             " revisions");
    revisions.insert(revisions.end(),
                     std::make_move_iterator(essay_revisions.begin()),
                     std::make_move_iterator(essay_revisions.end()));
  }
  atomic_write_file(out, revisions_to_jsonl(revisions));
  log_info("wrote ", revisions.size(), " revisions to ", out);
}

void run_encode(const std::string& revisions_path, const std::string& out) {
  const auto revisions = load_revisions(revisions_path);
  std::vector<std::string> order;
  std::map<std::string, std::vector<Revision>> grouped;
  for (const Revision& r : revisions) {
    auto [it, inserted] = grouped.try_emplace(r.essay_id);
    if (inserted) order.push_back(r.essay_id);
    it->second.push_back(r);
  }
  std::vector<EditorDocument> docs;
  docs.reserve(order.size());
  for (const std::string& editor_id : order)
    docs.push_back(editor_document(editor_id, grouped.at(editor_id)));
  save_docs(out, docs);
  log_info("wrote ", docs.size(), " editor documents to ", out);
}

void run_train(const std::string& docs_path, const Hyperparams& h,
               const std::string& out) {
  const auto docs = load_docs(docs_path);
  const LdaModel model = train(docs, h);
  save_model(out, model);
  log_info("trained k=", h.k, " model, train log likelihood ",
           model.train_log_likelihood);
}

void run_sweep(const std::string& docs_path, int kmin, int kmax,
               Hyperparams base, int top, const std::string& eval_docs_path,
               const std::string& out) {
  if (kmin < 1 || kmax < kmin)
    fail(ErrorCode::Config, "sweep needs 1 <= kmin <= kmax");
  const auto docs = load_docs(docs_path);
  std::vector<EditorDocument> eval_docs;
  if (!eval_docs_path.empty()) eval_docs = load_docs(eval_docs_path);

  // Independent models; train them in parallel, assemble in k order.
  std::vector<std::future<LdaModel>> futures;
  for (int k = kmin; k <= kmax; ++k) {
    Hyperparams h = base;
    h.k = k;
    h.seed = derive_seed(base.seed, static_cast<std::uint64_t>(k));
    futures.push_back(std::async(std::launch::async,
                                 [&docs, h] { return train(docs, h); }));
  }

  ordered_json results = ordered_json::array();
  for (int k = kmin; k <= kmax; ++k) {
    const LdaModel model = futures[static_cast<std::size_t>(k - kmin)].get();
    ordered_json entry;
    entry["k"] = k;
    entry["train_log_likelihood"] = model.train_log_likelihood;
    if (!eval_docs.empty())
      entry["heldout_log_likelihood"] = log_likelihood(
          model, eval_docs, 500,
          derive_seed(base.seed, 1000003 + static_cast<std::uint64_t>(k)));
    ordered_json topics = ordered_json::array();
    for (int t = 0; t < k; ++t) {
      ordered_json words = ordered_json::array();
      for (const auto& [word, p] : top_words(model, t, top)) {
        ordered_json w;
        w["word"] = word.text;
        w["p"] = p;
        words.push_back(std::move(w));
      }
      topics.push_back(std::move(words));
    }
    entry["topics"] = std::move(topics);
    results.push_back(std::move(entry));
  }
  atomic_write_file(out, results.dump(2) + "\n");
  log_info("swept k=", kmin, "..", kmax, " into ", out);
}

void run_topics(const std::string& model_path, int top,
                const std::string& labels_path) {
  const LdaModel model = load_model(model_path);
  std::vector<std::string> labels;
  if (!labels_path.empty()) {
    labels = labels_from_json(read_file(labels_path),
                              "labels file '" + labels_path + "'");
    if (static_cast<int>(labels.size()) != model.hyperparams.k)
      fail(ErrorCode::Config,
           "label file must name exactly k=" +
               std::to_string(model.hyperparams.k) + " roles");
  }
  for (int t = 0; t < model.hyperparams.k; ++t) {
    std::cout << role_label(labels, t) << ":\n";
    for (const auto& [word, p] : top_words(model, t, top))
      std::cout << "  " << word.text << " " << format_double(p) << "\n";
  }
}

void run_infer(const std::string& model_path, const std::string& docs_path,
               int sweeps, std::uint64_t seed, const std::string& out) {
  const LdaModel model = load_model(model_path);
  const auto docs = load_docs(docs_path);
  std::vector<std::string> ids;
  std::vector<std::vector<double>> theta;
  ids.reserve(docs.size());
  theta.reserve(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    ids.push_back(docs[d].editor_id);
    theta.push_back(infer(model, docs[d], sweeps, derive_seed(seed, d)));
  }
  atomic_write_file(out, theta_to_csv(ids, theta));
  log_info("wrote role mixtures for ", ids.size(), " editors to ", out);
}

void run_validate(const std::string& model_path, const std::string& docs_path,
                  const std::string& revisions_path,
                  const std::string& scores_path, const std::string& out,
                  const std::string& labels_path, ValidateOptions options,
                  ScaleMode scale_mode) {
  const LdaModel model = load_model(model_path);
  const auto docs = load_docs(docs_path);
  const auto revisions = load_revisions(revisions_path);
  const auto scores = load_scores(scores_path, scale_mode);
  if (!labels_path.empty())
    options.labels = labels_from_json(read_file(labels_path),
                                      "labels file '" + labels_path + "'");

  std::map<std::string, std::vector<Revision>> revisions_by_id;
  for (const Revision& r : revisions) revisions_by_id[r.essay_id].push_back(r);
  std::map<std::string, const ScoreRecord*> scores_by_id;
  for (const ScoreRecord& s : scores) scores_by_id.emplace(s.essay_id, &s);

  // The evaluation set is the scored editors, in docs-file order.
  std::vector<EditorDocument> eval_docs;
  std::vector<std::vector<Revision>> eval_revisions;
  std::vector<double> score1;
  std::vector<double> score2;
  for (const EditorDocument& doc : docs) {
    auto it = scores_by_id.find(doc.editor_id);
    if (it == scores_by_id.end()) continue;
    eval_docs.push_back(doc);
    auto rev_it = revisions_by_id.find(doc.editor_id);
    eval_revisions.push_back(rev_it == revisions_by_id.end()
                                 ? std::vector<Revision>{}
                                 : rev_it->second);
    score1.push_back(it->second->score1);
    score2.push_back(it->second->score2);
    scores_by_id.erase(it);
  }
  if (!scores_by_id.empty())
    fail(ErrorCode::Load, "scores name an editor missing from the docs file: '" +
                              scores_by_id.begin()->first + "'");
  if (eval_docs.empty())
    fail(ErrorCode::Load, "no scored editors found in the docs file");

  const ValidationReport report = build_validation_report(
      model, eval_docs, eval_revisions, score1, score2, options);
  atomic_write_file(out, report_to_json(report));
  std::cout << render_report(report);
  log_info("wrote validation report to ", out);
}

void run_synth(int k, int doc_count, double mean_len, double alpha,
               std::uint64_t seed, const std::string& out,
               const std::string& truth_out) {
  GroundTruth truth =
      make_ground_truth(k, doc_count, mean_len, alpha, derive_seed(seed, 0));
  auto [docs, realized] = generate_corpus(std::move(truth), derive_seed(seed, 1));
  const std::string docs_json = docs_to_json(docs);
  const std::string truth_json = truth_to_json(realized);
  atomic_write_file(out, docs_json);
  if (!truth_out.empty()) atomic_write_file(truth_out, truth_json);
  log_info("generated ", docs.size(), " synthetic editors into ", out);
}

void run_report(const std::string& in) {
  std::cout << render_report(load_report(in));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Editor role mining from essay revision histories"};
  app.require_subcommand(1);
  app.footer(
      "File formats:\n"
      "  corpus dir      one JSON file per essay: {essay_id, original,\n"
      "                  revised (paragraphs of sentences), annotations\n"
      "                  [{side, paragraph, sentence, purpose}]}, plus an\n"
      "                  optional scores.csv (essay_id,score1_raw,\n"
      "                  score2_raw,rubric_min,rubric_max with header)\n"
      "  revisions.jsonl one {essay_id, operation, purpose, position,\n"
      "                  original_ref, revised_ref} object per line\n"
      "  docs.json       {vocabulary: [63 words], documents:\n"
      "                  [{editor_id, counts}]}\n"
      "  model.json      {hyperparams, vocabulary, phi, theta_train,\n"
      "                  train_log_likelihood}\n"
      "  theta.csv       editor_id plus one column per role\n"
      "  report.json     {n, k, score_corr, purpose_r2, role_partial,\n"
      "                  skipped_purposes}\n"
      "Set REVROLES_LOG=error|warn|info|debug for diagnostics.");

  // align
  std::string corpus_dir;
  double threshold = 0.5;
  std::string align_out;
  auto* align = app.add_subcommand(
      "align", "Align drafts and extract revisions to JSON lines");
  align->add_option("--corpus", corpus_dir, "Corpus directory of essay JSON files")
      ->required()
      ->check(CLI::ExistingDirectory);
  align->add_option("--threshold", threshold,
                    "Similarity threshold for keeping a matched pair");
  align->add_option("--out", align_out, "Output revisions.jsonl")->required();

  // encode
  std::string revisions_path;
  std::string encode_out;
  auto* encode = app.add_subcommand(
      "encode", "Group revisions per editor into bag-of-words documents");
  encode->add_option("--revisions", revisions_path, "revisions.jsonl input")
      ->required()
      ->check(CLI::ExistingFile);
  encode->add_option("--out", encode_out, "Output docs.json")->required();

  // train
  std::string train_docs;
  Hyperparams hp;
  std::string train_out;
  auto* train_cmd = app.add_subcommand("train", "Train the LDA role model");
  train_cmd->add_option("--docs", train_docs, "docs.json input")
      ->required()
      ->check(CLI::ExistingFile);
  train_cmd->add_option("--k", hp.k, "Topic count");
  train_cmd->add_option("--alpha", hp.alpha, "Doc-topic Dirichlet prior");
  train_cmd->add_option("--beta", hp.beta, "Topic-word Dirichlet prior");
  train_cmd->add_option("--sweeps", hp.sweeps, "Gibbs sweeps");
  train_cmd->add_option("--burn-in", hp.burn_in, "Burn-in sweeps");
  train_cmd->add_option("--seed", hp.seed, "Random seed");
  train_cmd->add_flag("--average", hp.average,
                      "Average phi/theta over post-burn-in sweeps");
  train_cmd->add_option("--out", train_out, "Output model.json")->required();

  // sweep
  std::string sweep_docs;
  std::string sweep_eval_docs;
  int kmin = 2;
  int kmax = 10;
  int sweep_top = 10;
  Hyperparams sweep_hp;
  std::string sweep_out;
  auto* sweep = app.add_subcommand(
      "sweep", "Train one model per topic count and report likelihoods");
  sweep->add_option("--docs", sweep_docs, "docs.json input")
      ->required()
      ->check(CLI::ExistingFile);
  sweep->add_option("--kmin", kmin, "Smallest topic count");
  sweep->add_option("--kmax", kmax, "Largest topic count");
  sweep->add_option("--alpha", sweep_hp.alpha, "Doc-topic Dirichlet prior");
  sweep->add_option("--beta", sweep_hp.beta, "Topic-word Dirichlet prior");
  sweep->add_option("--sweeps", sweep_hp.sweeps, "Gibbs sweeps");
  sweep->add_option("--burn-in", sweep_hp.burn_in, "Burn-in sweeps");
  sweep->add_option("--seed", sweep_hp.seed, "Random seed");
  sweep->add_option("--top", sweep_top, "Top words listed per topic");
  sweep->add_option("--eval-docs", sweep_eval_docs,
                    "Held-out docs.json for fold-in likelihood")
      ->check(CLI::ExistingFile);
  sweep->add_option("--out", sweep_out, "Output sweep.json")->required();

  // topics
  std::string topics_model;
  int topics_top = 10;
  std::string topics_labels;
  auto* topics = app.add_subcommand("topics", "Print top words per role");
  topics->add_option("--model", topics_model, "model.json input")
      ->required()
      ->check(CLI::ExistingFile);
  topics->add_option("--top", topics_top, "Words per role");
  topics->add_option("--labels", topics_labels, "Role label JSON array")
      ->check(CLI::ExistingFile);

  // infer
  std::string infer_model;
  std::string infer_docs;
  int infer_sweeps = 1000;
  std::uint64_t infer_seed = 42;
  std::string infer_out;
  auto* infer_cmd = app.add_subcommand(
      "infer", "Fold-in role mixtures for editor documents");
  infer_cmd->add_option("--model", infer_model, "model.json input")
      ->required()
      ->check(CLI::ExistingFile);
  infer_cmd->add_option("--docs", infer_docs, "docs.json input")
      ->required()
      ->check(CLI::ExistingFile);
  infer_cmd->add_option("--sweeps", infer_sweeps, "Fold-in Gibbs sweeps");
  infer_cmd->add_option("--seed", infer_seed, "Random seed");
  infer_cmd->add_option("--out", infer_out, "Output theta.csv")->required();

  // validate
  std::string val_model;
  std::string val_docs;
  std::string val_revisions;
  std::string val_scores;
  std::string val_out;
  std::string val_labels;
  std::string val_scale = "rubric";
  ValidateOptions val_options;
  auto* validate = app.add_subcommand(
      "validate", "Variance and score-improvement validation analyses");
  validate->add_option("--model", val_model, "model.json input")
      ->required()
      ->check(CLI::ExistingFile);
  validate->add_option("--docs", val_docs, "docs.json for evaluation editors")
      ->required()
      ->check(CLI::ExistingFile);
  validate->add_option("--revisions", val_revisions, "revisions.jsonl input")
      ->required()
      ->check(CLI::ExistingFile);
  validate->add_option("--scores", val_scores, "scores.csv input")
      ->required()
      ->check(CLI::ExistingFile);
  validate->add_option("--out", val_out, "Output report.json")->required();
  validate->add_option("--labels", val_labels, "Role label JSON array")
      ->check(CLI::ExistingFile);
  validate->add_option("--sweeps", val_options.infer_sweeps,
                       "Fold-in Gibbs sweeps");
  validate->add_option("--seed", val_options.seed, "Random seed");
  validate->add_flag("--normalize", val_options.normalize,
                     "Regress purpose proportions instead of counts");
  validate->add_option("--scale", val_scale,
                       "Score scaling bounds: rubric or observed")
      ->check(CLI::IsMember({"rubric", "observed"}));

  // synth
  int synth_k = 5;
  int synth_docs = 200;
  double synth_mean_len = 18.0;
  double synth_alpha = 0.1;
  std::uint64_t synth_seed = 7;
  std::string synth_out;
  std::string synth_truth;
  auto* synth = app.add_subcommand(
      "synth", "Generate a synthetic editor corpus with known roles");
  synth->add_option("--k", synth_k, "Topic count");
  synth->add_option("--docs", synth_docs, "Number of editors");
  synth->add_option("--mean-len", synth_mean_len, "Mean revisions per editor");
  synth->add_option("--alpha", synth_alpha, "Mixture Dirichlet parameter");
  synth->add_option("--seed", synth_seed, "Random seed");
  synth->add_option("--out", synth_out, "Output docs.json")->required();
  synth->add_option("--truth", synth_truth, "Output ground-truth JSON");

  // report
  std::string report_in;
  auto* report = app.add_subcommand("report", "Render a report as text tables");
  report->add_option("--in", report_in, "report.json input")
      ->required()
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (align->parsed()) {
      run_align(corpus_dir, threshold, align_out);
    } else if (encode->parsed()) {
      run_encode(revisions_path, encode_out);
    } else if (train_cmd->parsed()) {
      run_train(train_docs, hp, train_out);
    } else if (sweep->parsed()) {
      run_sweep(sweep_docs, kmin, kmax, sweep_hp, sweep_top, sweep_eval_docs,
                sweep_out);
    } else if (topics->parsed()) {
      run_topics(topics_model, topics_top, topics_labels);
    } else if (infer_cmd->parsed()) {
      run_infer(infer_model, infer_docs, infer_sweeps, infer_seed, infer_out);
    } else if (validate->parsed()) {
      run_validate(val_model, val_docs, val_revisions, val_scores, val_out,
                   val_labels, val_options, parse_scale_mode(val_scale));
    } else if (synth->parsed()) {
      run_synth(synth_k, synth_docs, synth_mean_len, synth_alpha, synth_seed,
                synth_out, synth_truth);
    } else if (report->parsed()) {
      run_report(report_in);
    }
  } catch (const Error& e) {
    std::cerr << "revroles: error: " << to_string(e.code()) << ": " << e.what()
              << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "revroles: error: internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
