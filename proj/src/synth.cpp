#include "revroles/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "revroles/errors.hpp"
#include "revroles/rng.hpp"

namespace revroles {

namespace {

void check_stochastic_rows(const std::vector<std::vector<double>>& rows,
                           std::size_t width, const char* name) {
  for (const auto& row : rows) {
    if (row.size() != width)
      fail(ErrorCode::Config, std::string(name) + " rows must have length " +
                                  std::to_string(width));
    double sum = 0.0;
    for (double v : row) {
      if (v < 0.0)
        fail(ErrorCode::Config, std::string(name) + " entries must be >= 0");
      sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
      fail(ErrorCode::Config,
           std::string(name) + " rows must sum to 1 within 1e-9");
  }
}

std::string editor_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "editor_%04zu", index);
  return buf;
}

// Distributes `mass` over the listed words with geometric decay and
// spreads the remainder uniformly over the rest of the vocabulary.
std::vector<double> clustered_row(const std::vector<int>& cluster, double mass,
                                  double decay) {
  std::vector<double> row(kVocabularySize, 0.0);
  double norm = 0.0;
  double w = 1.0;
  for (std::size_t i = 0; i < cluster.size(); ++i, w *= decay) norm += w;
  w = 1.0;
  for (int id : cluster) {
    row[static_cast<std::size_t>(id)] += mass * w / norm;
    w *= decay;
  }
  const double rest =
      (1.0 - mass) / static_cast<double>(kVocabularySize - cluster.size());
  std::vector<bool> in_cluster(kVocabularySize, false);
  for (int id : cluster) in_cluster[static_cast<std::size_t>(id)] = true;
  for (int id = 0; id < kVocabularySize; ++id)
    if (!in_cluster[static_cast<std::size_t>(id)])
      row[static_cast<std::size_t>(id)] = rest;
  // repair rounding so the row sums to exactly 1 within 1e-12
  double sum = std::accumulate(row.begin(), row.end(), 0.0);
  for (double& v : row) v /= sum;
  return row;
}

}  // namespace

std::pair<std::vector<EditorDocument>, GroundTruth> generate_corpus(
    GroundTruth truth, std::uint64_t seed) {
  if (truth.phi_true.empty())
    fail(ErrorCode::Config, "ground truth needs at least one topic");
  const int k = static_cast<int>(truth.phi_true.size());
  check_stochastic_rows(truth.phi_true, kVocabularySize, "phi_true");
  if (!(truth.alpha_true > 0.0))
    fail(ErrorCode::Config, "alpha_true must be > 0");
  for (int len : truth.doc_lengths)
    if (len < 0) fail(ErrorCode::Config, "doc_lengths must be >= 0");
  const std::size_t d_count = truth.doc_lengths.size();
  if (!truth.theta_true.empty()) {
    if (truth.theta_true.size() != d_count)
      fail(ErrorCode::Config, "theta_true must have one row per document");
    check_stochastic_rows(truth.theta_true, static_cast<std::size_t>(k),
                          "theta_true");
  }

  const bool sample_theta = truth.theta_true.empty();
  if (sample_theta)
    truth.theta_true.assign(d_count,
                            std::vector<double>(static_cast<std::size_t>(k), 0.0));

  Rng rng(seed);
  std::vector<EditorDocument> docs;
  docs.reserve(d_count);
  for (std::size_t d = 0; d < d_count; ++d) {
    if (sample_theta) rng.dirichlet(truth.alpha_true, truth.theta_true[d]);
    std::vector<int> counts(kVocabularySize, 0);
    for (int t = 0; t < truth.doc_lengths[d]; ++t) {
      const std::size_t topic = rng.categorical(truth.theta_true[d]);
      const std::size_t word = rng.categorical(truth.phi_true[topic]);
      ++counts[word];
    }
    docs.push_back(make_editor_document(editor_name(d), std::move(counts)));
  }
  return {std::move(docs), std::move(truth)};
}

namespace {

double row_cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace

TopicMatch match_topics(const std::vector<std::vector<double>>& phi_learned,
                        const std::vector<std::vector<double>>& phi_true) {
  if (phi_learned.size() != phi_true.size())
    fail(ErrorCode::Config, "topic counts differ between matrices");
  const int k = static_cast<int>(phi_learned.size());
  if (k == 0) fail(ErrorCode::Config, "cannot match zero topics");
  if (k > 10)
    fail(ErrorCode::Config,
         "exhaustive matching supports at most 10 topics, got " +
             std::to_string(k));
  const std::size_t width = phi_learned[0].size();
  for (const auto& rows : {&phi_learned, &phi_true})
    for (const auto& row : *rows)
      if (row.size() != width)
        fail(ErrorCode::Config, "matrix rows have unequal widths");

  std::vector<std::vector<double>> cos(
      static_cast<std::size_t>(k),
      std::vector<double>(static_cast<std::size_t>(k), 0.0));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      cos[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          row_cosine(phi_learned[static_cast<std::size_t>(i)],
                     phi_true[static_cast<std::size_t>(j)]);

  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best = perm;
  double best_total = -1.0;
  do {
    double total = 0.0;
    for (int i = 0; i < k; ++i)
      total += cos[static_cast<std::size_t>(i)]
                  [static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
    if (total > best_total) {
      best_total = total;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  TopicMatch match;
  match.permutation = best;
  match.cosines.resize(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i)
    match.cosines[static_cast<std::size_t>(i)] =
        cos[static_cast<std::size_t>(i)]
           [static_cast<std::size_t>(best[static_cast<std::size_t>(i)])];
  match.mean_cosine = best_total / k;
  return match;
}

std::vector<std::vector<double>> stylized_role_profiles() {
  static const Vocabulary vocabulary;
  const auto ids = [&](std::initializer_list<const char*> words) {
    std::vector<int> cluster;
    for (const char* w : words) cluster.push_back(vocabulary.id_of(w));
    return cluster;
  };

  // Ranked word clusters for five recognizable editorial behaviors.
  const std::vector<std::vector<int>> clusters = {
      // proofreader: surface corrections throughout the essay
      ids({"Grammar_mid", "Grammar_beg", "Word-Usage_mid", "Grammar_end",
           "Word-Usage_end", "Word-Usage_beg", "Precision_beg", "General_mid",
           "General_end", "Reasoning_beg"}),
      // copy editor: wording, clarity, organization
      ids({"Word-Usage_mid", "Word-Usage_beg", "+Reasoning_mid",
           "Word-Usage_end", "Organization_mid", "-General_end", "General_end",
           "-Reasoning_mid", "Claims_mid", "-General_mid"}),
      // descriptive editor: broad development of general content
      ids({"+General_mid", "Word-Usage_mid", "-General_mid", "General_mid",
           "Evidence_mid", "Precision_mid", "-General_beg", "+General_beg",
           "Reasoning_mid", "+Claims_beg"}),
      // analytical editor: added information and restructuring
      ids({"Word-Usage_beg", "+General_end", "+Reasoning_end",
           "Word-Usage_end", "Organization_beg", "-Reasoning_end",
           "+Claims_end", "+Evidence_mid", "+Rebuttal_end",
           "Organization_mid"}),
      // persuasive editor: argument development with content additions
      ids({"+Reasoning_mid", "-Reasoning_mid", "+Claims_mid", "+Evidence_mid",
           "+General_mid", "-General_mid", "Reasoning_mid", "-General_beg",
           "-Claims_mid", "+General_beg"}),
  };

  std::vector<std::vector<double>> phi;
  phi.reserve(clusters.size());
  for (const auto& cluster : clusters)
    phi.push_back(clustered_row(cluster, 0.94, 0.8));
  return phi;
}

std::vector<std::vector<double>> block_role_profiles(int k) {
  if (k < 1 || k > kVocabularySize)
    fail(ErrorCode::Config, "block profiles need 1 <= k <= 63");
  std::vector<std::vector<double>> phi;
  phi.reserve(static_cast<std::size_t>(k));
  const int base = kVocabularySize / k;
  const int extra = kVocabularySize % k;
  int start = 0;
  for (int t = 0; t < k; ++t) {
    const int size = base + (t < extra ? 1 : 0);
    std::vector<int> cluster(static_cast<std::size_t>(size));
    std::iota(cluster.begin(), cluster.end(), start);
    start += size;
    phi.push_back(clustered_row(cluster, k == 1 ? 1.0 : 0.94, 0.9));
  }
  return phi;
}

GroundTruth make_ground_truth(int k, int docs, double mean_length,
                              double alpha, std::uint64_t seed) {
  if (docs < 0) fail(ErrorCode::Config, "document count must be >= 0");
  if (!(mean_length >= 0.0))
    fail(ErrorCode::Config, "mean document length must be >= 0");
  GroundTruth truth;
  truth.phi_true = k == 5 ? stylized_role_profiles() : block_role_profiles(k);
  truth.alpha_true = alpha;
  Rng rng(seed);
  truth.doc_lengths.reserve(static_cast<std::size_t>(docs));
  for (int d = 0; d < docs; ++d)
    truth.doc_lengths.push_back(rng.poisson(mean_length));
  return truth;
}

}  // namespace revroles
