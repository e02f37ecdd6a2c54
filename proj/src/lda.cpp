#include "revroles/lda.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

#include "revroles/errors.hpp"
#include "revroles/rng.hpp"

namespace revroles {

namespace {

// Token stream of one document: word ids repeated by count, in word-id
// order (bag of words, so any fixed order works).
std::vector<int> expand_tokens(const EditorDocument& doc) {
  std::vector<int> tokens;
  tokens.reserve(static_cast<std::size_t>(doc.total));
  for (int w = 0; w < static_cast<int>(doc.counts.size()); ++w)
    for (int c = 0; c < doc.counts[static_cast<std::size_t>(w)]; ++c)
      tokens.push_back(w);
  return tokens;
}

void check_document(const EditorDocument& doc) {
  if (static_cast<int>(doc.counts.size()) != kVocabularySize)
    fail(ErrorCode::VocabularyMismatch,
         "document '" + doc.editor_id + "' has " +
             std::to_string(doc.counts.size()) +
             " counts, expected " + std::to_string(kVocabularySize));
}

#ifndef NDEBUG
void check_count_conservation(const std::vector<std::vector<int>>& n_dk,
                              const std::vector<std::vector<int>>& n_kw,
                              const std::vector<int>& n_k,
                              const std::vector<std::vector<int>>& tokens) {
  const int k_count = static_cast<int>(n_k.size());
  long long total_tokens = 0;
  for (std::size_t d = 0; d < tokens.size(); ++d) {
    long long doc_sum = 0;
    for (int k = 0; k < k_count; ++k) doc_sum += n_dk[d][static_cast<std::size_t>(k)];
    assert(doc_sum == static_cast<long long>(tokens[d].size()));
    total_tokens += doc_sum;
  }
  long long topic_sum = 0;
  for (int k = 0; k < k_count; ++k) {
    long long word_sum = std::accumulate(n_kw[static_cast<std::size_t>(k)].begin(),
                                         n_kw[static_cast<std::size_t>(k)].end(), 0LL);
    assert(word_sum == n_k[static_cast<std::size_t>(k)]);
    topic_sum += word_sum;
  }
  assert(topic_sum == total_tokens);
}
#endif

}  // namespace

void validate_hyperparams(const Hyperparams& h) {
  if (h.k < 1)
    fail(ErrorCode::Config, "topic count must be >= 1, got " +
                                std::to_string(h.k));
  if (!(h.alpha > 0.0))
    fail(ErrorCode::Config, "alpha must be > 0");
  if (!(h.beta > 0.0))
    fail(ErrorCode::Config, "beta must be > 0");
  if (h.sweeps < 1)
    fail(ErrorCode::Config, "sweeps must be >= 1");
  if (h.burn_in < 0 || h.burn_in >= h.sweeps)
    fail(ErrorCode::Config, "burn_in must be in [0, sweeps)");
}

LdaModel train(std::span<const EditorDocument> docs, const Hyperparams& h) {
  validate_hyperparams(h);
  if (docs.empty())
    fail(ErrorCode::Training, "cannot train on an empty corpus");
  long long corpus_tokens = 0;
  for (const EditorDocument& doc : docs) {
    check_document(doc);
    corpus_tokens += doc.total;
  }
  if (corpus_tokens == 0)
    fail(ErrorCode::Training, "cannot train: all documents are empty");

  const int k_count = h.k;
  const int v = kVocabularySize;
  const std::size_t d_count = docs.size();

  std::vector<std::vector<int>> tokens(d_count);
  for (std::size_t d = 0; d < d_count; ++d) tokens[d] = expand_tokens(docs[d]);

  std::vector<std::vector<int>> assignment(d_count);
  std::vector<std::vector<int>> n_dk(
      d_count, std::vector<int>(static_cast<std::size_t>(k_count), 0));
  std::vector<std::vector<int>> n_kw(
      static_cast<std::size_t>(k_count),
      std::vector<int>(static_cast<std::size_t>(v), 0));
  std::vector<int> n_k(static_cast<std::size_t>(k_count), 0);

  Rng rng(h.seed);
  for (std::size_t d = 0; d < d_count; ++d) {
    assignment[d].resize(tokens[d].size());
    for (std::size_t i = 0; i < tokens[d].size(); ++i) {
      const int w = tokens[d][i];
      const int k = static_cast<int>(
          rng.uniform_int(static_cast<std::uint32_t>(k_count)));
      assignment[d][i] = k;
      ++n_dk[d][static_cast<std::size_t>(k)];
      ++n_kw[static_cast<std::size_t>(k)][static_cast<std::size_t>(w)];
      ++n_k[static_cast<std::size_t>(k)];
    }
  }

  const double v_beta = v * h.beta;
  std::vector<double> weights(static_cast<std::size_t>(k_count), 0.0);

  std::vector<std::vector<double>> phi_acc;
  std::vector<std::vector<double>> theta_acc;
  int samples = 0;
  if (h.average) {
    phi_acc.assign(static_cast<std::size_t>(k_count),
                   std::vector<double>(static_cast<std::size_t>(v), 0.0));
    theta_acc.assign(d_count,
                     std::vector<double>(static_cast<std::size_t>(k_count), 0.0));
  }

  const auto phi_of = [&](int k, int w) {
    return (n_kw[static_cast<std::size_t>(k)][static_cast<std::size_t>(w)] +
            h.beta) /
           (n_k[static_cast<std::size_t>(k)] + v_beta);
  };

  for (int sweep = 1; sweep <= h.sweeps; ++sweep) {
    for (std::size_t d = 0; d < d_count; ++d) {
      auto& doc_topics = n_dk[d];
      for (std::size_t i = 0; i < tokens[d].size(); ++i) {
        const int w = tokens[d][i];
        const int old_k = assignment[d][i];
        --doc_topics[static_cast<std::size_t>(old_k)];
        --n_kw[static_cast<std::size_t>(old_k)][static_cast<std::size_t>(w)];
        --n_k[static_cast<std::size_t>(old_k)];
        for (int k = 0; k < k_count; ++k)
          weights[static_cast<std::size_t>(k)] =
              phi_of(k, w) * (doc_topics[static_cast<std::size_t>(k)] + h.alpha);
        const int new_k = static_cast<int>(rng.categorical(weights));
        assignment[d][i] = new_k;
        ++doc_topics[static_cast<std::size_t>(new_k)];
        ++n_kw[static_cast<std::size_t>(new_k)][static_cast<std::size_t>(w)];
        ++n_k[static_cast<std::size_t>(new_k)];
      }
    }
#ifndef NDEBUG
    check_count_conservation(n_dk, n_kw, n_k, tokens);
#endif
    if (h.average && sweep > h.burn_in) {
      ++samples;
      for (int k = 0; k < k_count; ++k)
        for (int w = 0; w < v; ++w)
          phi_acc[static_cast<std::size_t>(k)][static_cast<std::size_t>(w)] +=
              phi_of(k, w);
      for (std::size_t d = 0; d < d_count; ++d) {
        const double denom =
            static_cast<double>(tokens[d].size()) + k_count * h.alpha;
        for (int k = 0; k < k_count; ++k)
          theta_acc[d][static_cast<std::size_t>(k)] +=
              (n_dk[d][static_cast<std::size_t>(k)] + h.alpha) / denom;
      }
    }
  }

  LdaModel model;
  model.hyperparams = h;
  model.phi.assign(static_cast<std::size_t>(k_count),
                   std::vector<double>(static_cast<std::size_t>(v), 0.0));
  model.theta_train.assign(
      d_count, std::vector<double>(static_cast<std::size_t>(k_count), 0.0));

  if (h.average && samples > 0) {
    for (int k = 0; k < k_count; ++k)
      for (int w = 0; w < v; ++w)
        model.phi[static_cast<std::size_t>(k)][static_cast<std::size_t>(w)] =
            phi_acc[static_cast<std::size_t>(k)][static_cast<std::size_t>(w)] /
            samples;
    for (std::size_t d = 0; d < d_count; ++d)
      for (int k = 0; k < k_count; ++k)
        model.theta_train[d][static_cast<std::size_t>(k)] =
            theta_acc[d][static_cast<std::size_t>(k)] / samples;
  } else {
    for (int k = 0; k < k_count; ++k)
      for (int w = 0; w < v; ++w)
        model.phi[static_cast<std::size_t>(k)][static_cast<std::size_t>(w)] =
            phi_of(k, w);
    for (std::size_t d = 0; d < d_count; ++d) {
      const double denom =
          static_cast<double>(tokens[d].size()) + k_count * h.alpha;
      for (int k = 0; k < k_count; ++k)
        model.theta_train[d][static_cast<std::size_t>(k)] =
            (n_dk[d][static_cast<std::size_t>(k)] + h.alpha) / denom;
    }
  }

  double ll = 0.0;
  for (std::size_t d = 0; d < d_count; ++d)
    ll += doc_log_likelihood(model, docs[d], model.theta_train[d]);
  model.train_log_likelihood = ll;
  return model;
}

std::vector<double> infer(const LdaModel& model, const EditorDocument& doc,
                          int sweeps, std::uint64_t seed) {
  check_document(doc);
  if (sweeps < 1) fail(ErrorCode::Config, "infer sweeps must be >= 1");
  const int k_count = model.hyperparams.k;
  const double alpha = model.hyperparams.alpha;

  const std::vector<int> tokens = expand_tokens(doc);
  std::vector<int> doc_topics(static_cast<std::size_t>(k_count), 0);
  std::vector<int> assignment(tokens.size(), 0);

  Rng rng(seed);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const int k = static_cast<int>(
        rng.uniform_int(static_cast<std::uint32_t>(k_count)));
    assignment[i] = k;
    ++doc_topics[static_cast<std::size_t>(k)];
  }

  std::vector<double> weights(static_cast<std::size_t>(k_count), 0.0);
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      const int w = tokens[i];
      const int old_k = assignment[i];
      --doc_topics[static_cast<std::size_t>(old_k)];
      for (int k = 0; k < k_count; ++k)
        weights[static_cast<std::size_t>(k)] =
            model.phi[static_cast<std::size_t>(k)][static_cast<std::size_t>(w)] *
            (doc_topics[static_cast<std::size_t>(k)] + alpha);
      const int new_k = static_cast<int>(rng.categorical(weights));
      assignment[i] = new_k;
      ++doc_topics[static_cast<std::size_t>(new_k)];
    }
  }

  std::vector<double> theta(static_cast<std::size_t>(k_count), 0.0);
  const double denom = static_cast<double>(tokens.size()) + k_count * alpha;
  for (int k = 0; k < k_count; ++k)
    theta[static_cast<std::size_t>(k)] =
        (doc_topics[static_cast<std::size_t>(k)] + alpha) / denom;
  return theta;
}

std::vector<std::pair<RevisionWord, double>> top_words(const LdaModel& model,
                                                       int topic, int n) {
  if (topic < 0 || topic >= model.hyperparams.k)
    fail(ErrorCode::Bounds, "topic " + std::to_string(topic) +
                                " out of range for k=" +
                                std::to_string(model.hyperparams.k));
  if (n < 1) fail(ErrorCode::Bounds, "top word count must be >= 1");
  n = std::min(n, kVocabularySize);

  const auto& row = model.phi[static_cast<std::size_t>(topic)];
  std::vector<int> ids(static_cast<std::size_t>(kVocabularySize));
  std::iota(ids.begin(), ids.end(), 0);
  std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) {
    return row[static_cast<std::size_t>(a)] > row[static_cast<std::size_t>(b)];
  });

  std::vector<std::pair<RevisionWord, double>> result;
  result.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    result.emplace_back(model.vocabulary.word(ids[static_cast<std::size_t>(i)]),
                        row[static_cast<std::size_t>(ids[static_cast<std::size_t>(i)])]);
  return result;
}

double doc_log_likelihood(const LdaModel& model, const EditorDocument& doc,
                          std::span<const double> theta) {
  check_document(doc);
  if (static_cast<int>(theta.size()) != model.hyperparams.k)
    fail(ErrorCode::Config, "theta length does not match topic count");
  double ll = 0.0;
  for (int w = 0; w < kVocabularySize; ++w) {
    const int count = doc.counts[static_cast<std::size_t>(w)];
    if (count == 0) continue;
    double p = 0.0;
    for (int k = 0; k < model.hyperparams.k; ++k)
      p += theta[static_cast<std::size_t>(k)] *
           model.phi[static_cast<std::size_t>(k)][static_cast<std::size_t>(w)];
    ll += count * std::log(p);
  }
  return ll;
}

double log_likelihood(const LdaModel& model,
                      std::span<const EditorDocument> docs, int infer_sweeps,
                      std::uint64_t seed) {
  double ll = 0.0;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const auto theta =
        infer(model, docs[d], infer_sweeps, derive_seed(seed, d));
    ll += doc_log_likelihood(model, docs[d], theta);
  }
  return ll;
}

}  // namespace revroles
