#include "revroles/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "revroles/errors.hpp"

namespace revroles {

namespace {

// Gaussian elimination with partial pivoting on the (p+1)x(p+1) normal
// equations. Small systems only (p <= a handful), so no factorization
// library is warranted.
std::vector<double> solve_linear(std::vector<std::vector<double>> a,
                                 std::vector<double> b) {
  const int n = static_cast<int>(a.size());
  double scale = 0.0;
  for (const auto& row : a)
    for (double v : row) scale = std::max(scale, std::fabs(v));
  const double tol = std::max(scale, 1.0) * 1e-12;

  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int row = col + 1; row < n; ++row)
      if (std::fabs(a[row][col]) > std::fabs(a[pivot][col])) pivot = row;
    if (std::fabs(a[pivot][col]) <= tol)
      fail(ErrorCode::SingularDesign,
           "design matrix is rank deficient (column " + std::to_string(col) +
               ")");
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (int row = col + 1; row < n; ++row) {
      const double factor = a[row][col] / a[col][col];
      if (factor == 0.0) continue;
      for (int k = col; k < n; ++k) a[row][k] -= factor * a[col][k];
      b[row] -= factor * b[col];
    }
  }
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  for (int row = n - 1; row >= 0; --row) {
    double acc = b[row];
    for (int k = row + 1; k < n; ++k) acc -= a[row][k] * x[k];
    x[row] = acc / a[row][row];
  }
  return x;
}

}  // namespace

RegressionResult ols_fit(const std::vector<std::vector<double>>& X,
                         std::span<const double> y) {
  const int n = static_cast<int>(y.size());
  if (static_cast<int>(X.size()) != n)
    fail(ErrorCode::Config, "design and target row counts differ");
  const int p = n > 0 ? static_cast<int>(X[0].size()) : 0;
  for (const auto& row : X)
    if (static_cast<int>(row.size()) != p)
      fail(ErrorCode::Config, "design matrix rows have unequal widths");
  if (n <= p + 1)
    fail(ErrorCode::InsufficientData,
         "need more samples than regressors plus intercept (n=" +
             std::to_string(n) + ", p=" + std::to_string(p) + ")");

  // Augmented design [1 | X]; normal equations A w = b.
  const int q = p + 1;
  std::vector<std::vector<double>> a(q, std::vector<double>(q, 0.0));
  std::vector<double> b(static_cast<std::size_t>(q), 0.0);
  for (int i = 0; i < n; ++i) {
    const auto& row = X[static_cast<std::size_t>(i)];
    for (int r = 0; r < q; ++r) {
      const double xr = r == 0 ? 1.0 : row[static_cast<std::size_t>(r - 1)];
      b[r] += xr * y[static_cast<std::size_t>(i)];
      for (int c = r; c < q; ++c) {
        const double xc = c == 0 ? 1.0 : row[static_cast<std::size_t>(c - 1)];
        a[r][c] += xr * xc;
      }
    }
  }
  for (int r = 0; r < q; ++r)
    for (int c = 0; c < r; ++c) a[r][c] = a[c][r];

  double mean_y = 0.0;
  for (double v : y) mean_y += v;
  mean_y /= n;
  double ss_tot = 0.0;
  for (double v : y) ss_tot += (v - mean_y) * (v - mean_y);
  if (ss_tot == 0.0)
    fail(ErrorCode::DegenerateTarget,
         "target is constant; variance explanation is undefined");

  const std::vector<double> w = solve_linear(std::move(a), std::move(b));

  RegressionResult result;
  result.intercept = w[0];
  result.coefficients.assign(w.begin() + 1, w.end());
  result.n = n;
  double ss_res = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r =
        y[static_cast<std::size_t>(i)] -
        predict(result, X[static_cast<std::size_t>(i)]);
    ss_res += r * r;
  }
  result.r_squared = std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
  return result;
}

double predict(const RegressionResult& fit, std::span<const double> row) {
  double value = fit.intercept;
  for (std::size_t k = 0; k < fit.coefficients.size(); ++k)
    value += fit.coefficients[k] * row[k];
  return value;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  const int n = static_cast<int>(x.size());
  if (static_cast<int>(y.size()) != n)
    fail(ErrorCode::Config, "correlation inputs have different lengths");
  if (n < 3)
    fail(ErrorCode::InsufficientData,
         "correlation needs n >= 3, got n=" + std::to_string(n));
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (int i = 0; i < n; ++i) {
    mean_x += x[static_cast<std::size_t>(i)];
    mean_y += y[static_cast<std::size_t>(i)];
  }
  mean_x /= n;
  mean_y /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (int i = 0; i < n; ++i) {
    const double dx = x[static_cast<std::size_t>(i)] - mean_x;
    const double dy = y[static_cast<std::size_t>(i)] - mean_y;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    fail(ErrorCode::DegenerateVariance,
         "correlation is undefined for a constant vector");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

PartialCorrResult partial_correlation(std::span<const double> x,
                                      std::span<const double> y,
                                      std::span<const double> z) {
  const int n = static_cast<int>(x.size());
  if (static_cast<int>(y.size()) != n || static_cast<int>(z.size()) != n)
    fail(ErrorCode::Config, "partial correlation inputs differ in length");
  if (n < 4)
    fail(ErrorCode::InsufficientData,
         "partial correlation needs n >= 4, got n=" + std::to_string(n));

  const double r_xy = pearson(x, y);
  const double r_xz = pearson(x, z);
  const double r_yz = pearson(y, z);
  constexpr double kConfoundLimit = 1.0 - 1e-12;
  if (std::fabs(r_xz) >= kConfoundLimit || std::fabs(r_yz) >= kConfoundLimit)
    fail(ErrorCode::PerfectConfound,
         "control variable perfectly explains an input; no residual "
         "variance after controlling");

  PartialCorrResult result;
  result.df = n - 3;
  const double denom = std::sqrt((1.0 - r_xz * r_xz) * (1.0 - r_yz * r_yz));
  result.r = std::clamp((r_xy - r_xz * r_yz) / denom, -1.0, 1.0);
  const double one_minus_r2 = 1.0 - result.r * result.r;
  if (one_minus_r2 <= 0.0) {
    result.p_value = 0.0;
  } else {
    const double t = result.r * std::sqrt(result.df / one_minus_r2);
    result.p_value = t_two_tailed_p(t, result.df);
  }
  return result;
}

namespace {

// Continued fraction for the incomplete beta function (Lentz's method).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 300;
  constexpr double kEps = 3.0e-16;
  constexpr double kTiny = 1.0e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) <= kEps) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0))
    fail(ErrorCode::Config, "incomplete beta parameters must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0))
    return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double t_two_tailed_p(double t, int df) {
  if (df < 1) fail(ErrorCode::Config, "degrees of freedom must be >= 1");
  if (t == 0.0) return 1.0;
  if (std::isinf(t)) return 0.0;
  const double x = df / (df + t * t);
  return std::clamp(regularized_incomplete_beta(df / 2.0, 0.5, x), 0.0, 1.0);
}

double f_upper_tail_p(double f, int d1, int d2) {
  if (d1 < 1 || d2 < 1)
    fail(ErrorCode::Config, "F-test degrees of freedom must be >= 1");
  if (!(f > 0.0)) return 1.0;
  if (std::isinf(f)) return 0.0;
  const double x = d2 / (d2 + static_cast<double>(d1) * f);
  return std::clamp(regularized_incomplete_beta(d2 / 2.0, d1 / 2.0, x), 0.0,
                    1.0);
}

double pearson_p_value(double r, int n) {
  const int df = n - 2;
  if (df < 1)
    fail(ErrorCode::InsufficientData,
         "correlation p-value needs n >= 3, got n=" + std::to_string(n));
  const double one_minus_r2 = 1.0 - r * r;
  if (one_minus_r2 <= 0.0) return 0.0;
  return t_two_tailed_p(r * std::sqrt(df / one_minus_r2), df);
}

double regression_p_value(double r_squared, int p, int n) {
  if (p < 1) fail(ErrorCode::Config, "regression p-value needs p >= 1");
  const int d2 = n - p - 1;
  if (d2 < 1)
    fail(ErrorCode::InsufficientData,
         "regression p-value needs n > p + 1");
  const double one_minus = 1.0 - r_squared;
  if (one_minus <= 0.0) return 0.0;
  const double f = (r_squared / p) / (one_minus / d2);
  return f_upper_tail_p(f, p, d2);
}

}  // namespace revroles
