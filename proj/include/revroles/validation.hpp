#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "revroles/lda.hpp"
#include "revroles/stats.hpp"
#include "revroles/types.hpp"

namespace revroles {

// One per-purpose regression outcome; flag is nonempty when the fit
// could not be produced (the error message).
struct PurposeFit {
  Purpose purpose = Purpose::General;
  std::optional<RegressionResult> fit;
  double p_value = 1.0;  // overall F-test, valid when fit is set
  std::string flag;
};

struct SkippedPurpose {
  Purpose purpose = Purpose::General;
  std::string reason;
};

struct PurposeVarianceResult {
  std::vector<PurposeFit> fits;          // purposes with >= 1 edit
  std::vector<SkippedPurpose> skipped;   // purposes absent from the corpus
};

// Per-editor purpose counts (rows aligned with theta).
std::vector<std::vector<int>> purpose_count_matrix(
    std::span<const std::vector<Revision>> revisions_by_editor);

// Fits one regression per purpose present in the corpus: role mixture ->
// edit frequency for that purpose. Because theta rows sum to 1 the last
// theta column is dropped before fitting (the span, and hence R^2, is
// unchanged). Per-purpose errors become flags; other purposes still fit.
PurposeVarianceResult purpose_variance_analysis(
    const std::vector<std::vector<double>>& theta,
    std::span<const std::vector<Revision>> revisions_by_editor,
    bool normalize = false);

PurposeVarianceResult purpose_variance_from_counts(
    const std::vector<std::vector<double>>& theta,
    const std::vector<std::vector<int>>& counts, bool normalize = false);

struct ScoreCorrEntry {
  std::optional<double> r;
  std::optional<double> p;
  std::string flag;
};

struct RolePartialEntry {
  int role = 0;
  std::string label;
  std::optional<PartialCorrResult> result;
  std::string flag;
};

struct ImprovementCorrelationResult {
  ScoreCorrEntry score_corr;            // Score1 vs Score2
  std::vector<RolePartialEntry> roles;  // exactly k entries
};

// Partial correlation of each role probability with Score2 controlling
// Score1. Degenerate roles (constant probability) are flagged rather
// than aborting the others; a perfect Score1/Score2 confound is an error.
ImprovementCorrelationResult improvement_correlation_analysis(
    const std::vector<std::vector<double>>& theta,
    std::span<const double> score1, std::span<const double> score2);

struct ValidationReport {
  int n = 0;  // editors with scores
  int k = 0;  // roles
  ScoreCorrEntry score_corr;
  std::vector<PurposeFit> purpose_r2;
  std::vector<RolePartialEntry> role_partial;
  std::vector<SkippedPurpose> skipped_purposes;
};

struct ValidateOptions {
  int infer_sweeps = 1000;
  std::uint64_t seed = 42;
  bool normalize = false;
  std::vector<std::string> labels;  // role names; defaults to "Topic i"
};

// Full validation over editors with scores: fold-in inference for the
// role mixtures, then both analyses. Inputs are row-aligned.
ValidationReport build_validation_report(
    const LdaModel& model, std::span<const EditorDocument> docs,
    std::span<const std::vector<Revision>> revisions_by_editor,
    std::span<const double> score1, std::span<const double> score2,
    const ValidateOptions& options = {});

std::string role_label(const std::vector<std::string>& labels, int role);

}  // namespace revroles
