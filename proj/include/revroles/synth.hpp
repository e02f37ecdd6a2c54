#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "revroles/vocab.hpp"

namespace revroles {

// Known generative parameters for a synthetic editor corpus.
struct GroundTruth {
  std::vector<std::vector<double>> phi_true;   // k x 63, row-stochastic
  double alpha_true = 0.1;
  std::vector<std::vector<double>> theta_true;  // sampled when empty
  std::vector<int> doc_lengths;
};

// Samples editor documents from the topic-mixture generative process:
// theta_d ~ Dirichlet(alpha) unless given, then topic ~ theta_d and
// word ~ phi[topic] per token. Returns the documents together with the
// truth including the realized theta rows.
std::pair<std::vector<EditorDocument>, GroundTruth> generate_corpus(
    GroundTruth truth, std::uint64_t seed);

struct TopicMatch {
  std::vector<int> permutation;  // learned row i matches truth row permutation[i]
  std::vector<double> cosines;   // per learned row, against its match
  double mean_cosine = 0.0;
};

// Optimal one-to-one topic assignment maximizing total cosine similarity,
// exhaustive over permutations (k <= 10).
TopicMatch match_topics(const std::vector<std::vector<double>>& phi_learned,
                        const std::vector<std::vector<double>>& phi_true);

// Five stylized editorial role shapes (proofreader-, copy-, descriptive-,
// analytical-, and persuasive-editor-like), each concentrating most mass
// on a ranked cluster of ten revision words.
std::vector<std::vector<double>> stylized_role_profiles();

// Generic fallback for other k: contiguous word-id blocks.
std::vector<std::vector<double>> block_role_profiles(int k);

// Ground truth with Poisson(mean_length) document lengths and the
// stylized profiles for k == 5 (block profiles otherwise).
GroundTruth make_ground_truth(int k, int docs, double mean_length,
                              double alpha, std::uint64_t seed);

}  // namespace revroles
