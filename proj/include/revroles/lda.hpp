#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "revroles/vocab.hpp"

namespace revroles {

struct Hyperparams {
  int k = 5;
  double alpha = 0.1;
  double beta = 0.01;
  int sweeps = 2000;
  int burn_in = 1000;
  std::uint64_t seed = 42;
  // When set, phi/theta are averaged over post-burn-in sweeps instead of
  // read off the final sampler state.
  bool average = false;
};

void validate_hyperparams(const Hyperparams& h);

// A trained topic model over the 63-word revision vocabulary.
// phi rows (one per topic) and theta_train rows (one per training
// document) are strictly positive and sum to 1.
struct LdaModel {
  Hyperparams hyperparams;
  Vocabulary vocabulary;
  std::vector<std::vector<double>> phi;          // k x 63
  std::vector<std::vector<double>> theta_train;  // docs x k
  double train_log_likelihood = 0.0;
};

// Collapsed Gibbs sampling for `sweeps` full passes over all token-topic
// assignments. phi[k][w] = (n_kw + beta) / (n_k + V*beta) and
// theta[d][k] = (n_dk + alpha) / (n_d + k*alpha) from the final counts.
// Identical inputs and seed give a bit-identical model.
LdaModel train(std::span<const EditorDocument> docs, const Hyperparams& h);

// Fold-in inference: topic-word probabilities stay frozen while the
// document's topic counts are resampled for `sweeps` passes. Returns the
// smoothed topic mixture (sums to 1).
std::vector<double> infer(const LdaModel& model, const EditorDocument& doc,
                          int sweeps, std::uint64_t seed);

// Words of one topic by descending probability, ties broken by word id;
// n is capped at the vocabulary size.
std::vector<std::pair<RevisionWord, double>> top_words(const LdaModel& model,
                                                       int topic, int n);

// Token log likelihood of one document under a fixed topic mixture.
double doc_log_likelihood(const LdaModel& model, const EditorDocument& doc,
                          std::span<const double> theta);

// Sum of token log likelihoods over docs, using fold-in inference to
// obtain each document's mixture (per-document seeds derive from seed).
double log_likelihood(const LdaModel& model,
                      std::span<const EditorDocument> docs,
                      int infer_sweeps = 500, std::uint64_t seed = 0);

}  // namespace revroles
