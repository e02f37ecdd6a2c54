#pragma once

#include <span>
#include <vector>

namespace revroles {

struct RegressionResult {
  std::vector<double> coefficients;
  double intercept = 0.0;
  double r_squared = 0.0;
  int n = 0;
};

// Least squares with an intercept via normal equations and a partially
// pivoted solve. X holds n rows of p regressors. Requires n > p+1 and a
// full-rank design; a constant target is rejected as degenerate.
RegressionResult ols_fit(const std::vector<std::vector<double>>& X,
                         std::span<const double> y);

double predict(const RegressionResult& fit, std::span<const double> row);

// Sample Pearson correlation; requires n >= 3 and non-constant inputs.
double pearson(std::span<const double> x, std::span<const double> y);

struct PartialCorrResult {
  double r = 0.0;
  double p_value = 1.0;
  int df = 0;  // n - 3
};

// First-order partial correlation of x and y controlling z, with a
// two-tailed p-value from t = r*sqrt((n-3)/(1-r^2)).
PartialCorrResult partial_correlation(std::span<const double> x,
                                      std::span<const double> y,
                                      std::span<const double> z);

// Two-tailed Student-t tail probability, 2*P(T_df > |t|), via the
// regularized incomplete beta function (absolute accuracy ~1e-12).
double t_two_tailed_p(double t, int df);

// Upper tail of the F distribution, P(F_{d1,d2} > f).
double f_upper_tail_p(double f, int d1, int d2);

// I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double a, double b, double x);

// Two-tailed p-value for a Pearson correlation at sample size n (df = n-2).
double pearson_p_value(double r, int n);

// Overall regression significance: F-test p-value recovered from R^2
// with p regressors at sample size n.
double regression_p_value(double r_squared, int p, int n);

}  // namespace revroles
