#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "revroles/errors.hpp"
#include "revroles/synth.hpp"

using namespace revroles;

TEST_CASE("generated documents have exactly the requested lengths") {
  GroundTruth truth = make_ground_truth(5, 30, 12.0, 0.1, 21);
  const std::vector<int> lengths = truth.doc_lengths;
  auto [docs, realized] = generate_corpus(std::move(truth), 22);
  REQUIRE(docs.size() == lengths.size());
  for (std::size_t d = 0; d < docs.size(); ++d)
    CHECK(docs[d].total == lengths[d]);
  REQUIRE(realized.theta_true.size() == docs.size());
  for (const auto& row : realized.theta_true) {
    double sum = std::accumulate(row.begin(), row.end(), 0.0);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("zero-length documents are all zeros") {
  GroundTruth truth;
  truth.phi_true = block_role_profiles(2);
  truth.doc_lengths = {0, 0, 0};
  auto [docs, realized] = generate_corpus(std::move(truth), 5);
  for (const auto& doc : docs) CHECK(doc.total == 0);
}

TEST_CASE("k=1 empirical distribution approaches phi (law of large numbers)") {
  GroundTruth truth;
  truth.phi_true = block_role_profiles(1);
  truth.doc_lengths = {10000};
  auto [docs, realized] = generate_corpus(std::move(truth), 777);
  double tv = 0.0;
  for (int w = 0; w < kVocabularySize; ++w) {
    const double empirical =
        docs[0].counts[static_cast<std::size_t>(w)] / 10000.0;
    tv += std::fabs(empirical - realized.phi_true[0][static_cast<std::size_t>(w)]);
  }
  CHECK(tv / 2.0 < 0.05);
}

TEST_CASE("point-mass topics produce only their own word") {
  GroundTruth truth;
  truth.phi_true.assign(2, std::vector<double>(kVocabularySize, 0.0));
  truth.phi_true[0][3] = 1.0;
  truth.phi_true[1][59] = 1.0;
  truth.theta_true = {{1.0, 0.0}, {0.0, 1.0}};
  truth.doc_lengths = {25, 25};
  auto [docs, realized] = generate_corpus(std::move(truth), 1);
  CHECK(docs[0].counts[3] == 25);
  CHECK(docs[0].total == 25);
  CHECK(docs[1].counts[59] == 25);
}

TEST_CASE("generation is deterministic per seed") {
  GroundTruth truth = make_ground_truth(4, 20, 10.0, 0.2, 3);
  GroundTruth copy = truth;
  auto [docs_a, ra] = generate_corpus(std::move(truth), 9);
  auto [docs_b, rb] = generate_corpus(std::move(copy), 9);
  REQUIRE(docs_a.size() == docs_b.size());
  for (std::size_t d = 0; d < docs_a.size(); ++d)
    CHECK(docs_a[d].counts == docs_b[d].counts);
}

TEST_CASE("generate_corpus validates its input") {
  GroundTruth truth;
  truth.phi_true.assign(2, std::vector<double>(kVocabularySize, 0.0));
  truth.phi_true[0][0] = 0.7;  // does not sum to 1
  truth.phi_true[1][1] = 1.0;
  truth.doc_lengths = {5};
  CHECK_THROWS_AS(static_cast<void>(generate_corpus(std::move(truth), 1)),
                  Error);
}

TEST_CASE("match_topics recovers identity and permutations") {
  const auto phi = stylized_role_profiles();
  const TopicMatch self = match_topics(phi, phi);
  for (int i = 0; i < 5; ++i) {
    CHECK(self.permutation[static_cast<std::size_t>(i)] == i);
    CHECK(self.cosines[static_cast<std::size_t>(i)] ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(self.mean_cosine == doctest::Approx(1.0).epsilon(1e-12));

  // shuffled rows: the inverse permutation is recovered with cosines 1
  const std::vector<int> shuffle = {3, 0, 4, 1, 2};
  std::vector<std::vector<double>> shuffled(5);
  for (int i = 0; i < 5; ++i)
    shuffled[static_cast<std::size_t>(i)] =
        phi[static_cast<std::size_t>(shuffle[static_cast<std::size_t>(i)])];
  const TopicMatch match = match_topics(shuffled, phi);
  for (int i = 0; i < 5; ++i) {
    CHECK(match.permutation[static_cast<std::size_t>(i)] ==
          shuffle[static_cast<std::size_t>(i)]);
    CHECK(match.cosines[static_cast<std::size_t>(i)] ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("match_topics mean cosine is invariant to row permutations") {
  const auto phi = stylized_role_profiles();
  auto noisy = phi;
  for (auto& row : noisy) {
    double sum = 0.0;
    for (std::size_t w = 0; w < row.size(); ++w) {
      row[w] = row[w] * 0.9 + 0.1 / 63.0;
      sum += row[w];
    }
    for (double& v : row) v /= sum;
  }
  const double base = match_topics(noisy, phi).mean_cosine;
  std::vector<std::vector<double>> rotated = {noisy[4], noisy[0], noisy[1],
                                              noisy[2], noisy[3]};
  CHECK(match_topics(rotated, phi).mean_cosine ==
        doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("random vs structured profiles match poorly") {
  const auto structured = stylized_role_profiles();
  // a seeded flat-ish random matrix
  std::vector<std::vector<double>> random_phi(
      5, std::vector<double>(kVocabularySize, 0.0));
  std::uint64_t state = 12345;
  for (auto& row : random_phi) {
    double sum = 0.0;
    for (double& v : row) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      v = static_cast<double>((state >> 33) % 1000 + 1);
      sum += v;
    }
    for (double& v : row) v /= sum;
  }
  CHECK(match_topics(random_phi, structured).mean_cosine < 0.6);
}

TEST_CASE("match_topics rejects shape mismatches") {
  const auto phi = stylized_role_profiles();
  const auto smaller = block_role_profiles(3);
  CHECK_THROWS_AS(static_cast<void>(match_topics(phi, smaller)), Error);
}

TEST_CASE("profiles are row-stochastic") {
  for (const auto& profiles :
       {stylized_role_profiles(), block_role_profiles(4),
        block_role_profiles(1), block_role_profiles(10)}) {
    for (const auto& row : profiles) {
      double sum = std::accumulate(row.begin(), row.end(), 0.0);
      CHECK(std::fabs(sum - 1.0) <= 1e-9);
      for (double v : row) CHECK(v >= 0.0);
    }
  }
}
