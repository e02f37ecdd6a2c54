#include "revroles/validation.hpp"

#include <algorithm>

#include "revroles/errors.hpp"
#include "revroles/rng.hpp"

namespace revroles {

namespace {

constexpr int purpose_index(Purpose p) { return static_cast<int>(p); }

// Drop the last theta column: rows sum to 1, so the full matrix plus an
// intercept is singular by construction. The reduced design spans the
// same space and leaves R^2 unchanged.
std::vector<std::vector<double>> reduced_design(
    const std::vector<std::vector<double>>& theta) {
  std::vector<std::vector<double>> X;
  X.reserve(theta.size());
  for (const auto& row : theta) {
    if (row.empty()) fail(ErrorCode::Config, "theta rows must be nonempty");
    X.emplace_back(row.begin(), row.end() - 1);
  }
  return X;
}

}  // namespace

std::vector<std::vector<int>> purpose_count_matrix(
    std::span<const std::vector<Revision>> revisions_by_editor) {
  std::vector<std::vector<int>> counts(
      revisions_by_editor.size(), std::vector<int>(kPurposeCount, 0));
  for (std::size_t d = 0; d < revisions_by_editor.size(); ++d)
    for (const Revision& r : revisions_by_editor[d])
      ++counts[d][static_cast<std::size_t>(purpose_index(r.purpose))];
  return counts;
}

PurposeVarianceResult purpose_variance_from_counts(
    const std::vector<std::vector<double>>& theta,
    const std::vector<std::vector<int>>& counts, bool normalize) {
  if (theta.size() != counts.size())
    fail(ErrorCode::Config, "theta and counts row counts differ");
  if (theta.empty())
    fail(ErrorCode::Config, "purpose variance analysis needs >= 1 editor");

  const std::vector<std::vector<double>> X = reduced_design(theta);

  std::vector<double> totals(counts.size(), 0.0);
  for (std::size_t d = 0; d < counts.size(); ++d) {
    if (static_cast<int>(counts[d].size()) != kPurposeCount)
      fail(ErrorCode::Config, "purpose count rows must have 9 entries");
    for (int c : counts[d]) totals[d] += c;
  }

  PurposeVarianceResult result;
  for (Purpose purpose : all_purposes()) {
    const std::size_t j = static_cast<std::size_t>(purpose_index(purpose));
    long long corpus_total = 0;
    for (const auto& row : counts) corpus_total += row[j];
    if (corpus_total == 0) {
      result.skipped.push_back(
          {purpose, "no revisions of this purpose in the corpus"});
      continue;
    }
    std::vector<double> y(counts.size(), 0.0);
    for (std::size_t d = 0; d < counts.size(); ++d) {
      y[d] = static_cast<double>(counts[d][j]);
      if (normalize) y[d] = totals[d] > 0.0 ? y[d] / totals[d] : 0.0;
    }
    PurposeFit fit;
    fit.purpose = purpose;
    try {
      RegressionResult regression = ols_fit(X, y);
      fit.p_value = regression_p_value(
          regression.r_squared, static_cast<int>(X[0].size()), regression.n);
      fit.fit = std::move(regression);
    } catch (const Error& e) {
      fit.flag = e.what();
    }
    result.fits.push_back(std::move(fit));
  }
  return result;
}

PurposeVarianceResult purpose_variance_analysis(
    const std::vector<std::vector<double>>& theta,
    std::span<const std::vector<Revision>> revisions_by_editor,
    bool normalize) {
  return purpose_variance_from_counts(
      theta, purpose_count_matrix(revisions_by_editor), normalize);
}

ImprovementCorrelationResult improvement_correlation_analysis(
    const std::vector<std::vector<double>>& theta,
    std::span<const double> score1, std::span<const double> score2) {
  const std::size_t n = theta.size();
  if (score1.size() != n || score2.size() != n)
    fail(ErrorCode::Config, "theta and score lengths differ");
  if (n == 0)
    fail(ErrorCode::Config, "improvement analysis needs >= 1 editor");
  const int k = static_cast<int>(theta[0].size());

  ImprovementCorrelationResult result;
  if (n < 3) {
    result.score_corr.flag = "insufficient editors for correlation (n=" +
                             std::to_string(n) + ", need >= 3)";
  } else {
    try {
      const double r = pearson(score1, score2);
      result.score_corr.r = r;
      result.score_corr.p = pearson_p_value(r, static_cast<int>(n));
    } catch (const Error& e) {
      result.score_corr.flag = e.what();
    }
  }

  for (int role = 0; role < k; ++role) {
    RolePartialEntry entry;
    entry.role = role;
    if (n < 4) {
      entry.flag = "insufficient editors for partial correlation (n=" +
                   std::to_string(n) + ", need >= 4)";
      result.roles.push_back(std::move(entry));
      continue;
    }
    std::vector<double> column(n, 0.0);
    for (std::size_t d = 0; d < n; ++d)
      column[d] = theta[d][static_cast<std::size_t>(role)];
    try {
      entry.result = partial_correlation(column, score2, score1);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::PerfectConfound) throw;
      entry.flag = e.what();
    }
    result.roles.push_back(std::move(entry));
  }
  return result;
}

std::string role_label(const std::vector<std::string>& labels, int role) {
  if (role < static_cast<int>(labels.size()))
    return labels[static_cast<std::size_t>(role)];
  return "Topic " + std::to_string(role);
}

ValidationReport build_validation_report(
    const LdaModel& model, std::span<const EditorDocument> docs,
    std::span<const std::vector<Revision>> revisions_by_editor,
    std::span<const double> score1, std::span<const double> score2,
    const ValidateOptions& options) {
  const std::size_t n = docs.size();
  if (revisions_by_editor.size() != n || score1.size() != n ||
      score2.size() != n)
    fail(ErrorCode::Config, "validation inputs must be row-aligned");
  if (n == 0) fail(ErrorCode::Config, "validation needs >= 1 scored editor");
  if (!options.labels.empty() &&
      static_cast<int>(options.labels.size()) != model.hyperparams.k)
    fail(ErrorCode::Config,
         "label file must name exactly k=" +
             std::to_string(model.hyperparams.k) + " roles");

  std::vector<std::vector<double>> theta;
  theta.reserve(n);
  for (std::size_t d = 0; d < n; ++d)
    theta.push_back(infer(model, docs[d], options.infer_sweeps,
                          derive_seed(options.seed, d)));

  ValidationReport report;
  report.n = static_cast<int>(n);
  report.k = model.hyperparams.k;

  PurposeVarianceResult variance =
      purpose_variance_analysis(theta, revisions_by_editor, options.normalize);
  report.purpose_r2 = std::move(variance.fits);
  report.skipped_purposes = std::move(variance.skipped);

  ImprovementCorrelationResult improvement =
      improvement_correlation_analysis(theta, score1, score2);
  report.score_corr = std::move(improvement.score_corr);
  report.role_partial = std::move(improvement.roles);
  for (RolePartialEntry& entry : report.role_partial)
    entry.label = role_label(options.labels, entry.role);

  return report;
}

}  // namespace revroles
