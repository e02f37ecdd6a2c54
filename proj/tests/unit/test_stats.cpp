#include <doctest.h>

#include <cmath>
#include <random>

#include "revroles/errors.hpp"
#include "revroles/stats.hpp"
#include "support/oracles.hpp"

using namespace revroles;

TEST_CASE("ols_fit recovers an exact line") {
  std::vector<std::vector<double>> X;
  std::vector<double> y;
  for (int i = 0; i < 10; ++i) {
    X.push_back({static_cast<double>(i)});
    y.push_back(2.0 * i + 3.0);
  }
  const RegressionResult fit = ols_fit(X, y);
  CHECK(fit.coefficients[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.n == 10);
}

TEST_CASE("ols_fit on the 4-point hand-solved instance") {
  const std::vector<std::vector<double>> X = {{0}, {1}, {2}, {3}};
  const std::vector<double> y = {1, 1, 3, 3};
  const RegressionResult fit = ols_fit(X, y);
  CHECK(fit.coefficients[0] == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("ols_fit of pure noise explains almost nothing") {
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int n = 1000;
  const int p = 5;
  std::vector<std::vector<double>> X;
  std::vector<double> y;
  for (int i = 0; i < n; ++i) {
    std::vector<double> row;
    for (int j = 0; j < p; ++j) row.push_back(normal(rng));
    X.push_back(std::move(row));
    y.push_back(normal(rng));
  }
  const RegressionResult fit = ols_fit(X, y);
  CHECK(fit.r_squared < 0.02);
}

TEST_CASE("ols_fit rejects rank-deficient designs and constant targets") {
  std::vector<std::vector<double>> X;
  std::vector<double> y;
  for (int i = 0; i < 8; ++i) {
    const double v = static_cast<double>(i);
    X.push_back({v, 2.0 * v});  // second column is a multiple of the first
    y.push_back(v);
  }
  CHECK_THROWS_AS(static_cast<void>(ols_fit(X, y)), Error);

  std::vector<std::vector<double>> X2 = {{0}, {1}, {2}, {3}, {4}};
  const std::vector<double> constant_y = {2, 2, 2, 2, 2};
  CHECK_THROWS_AS(static_cast<void>(ols_fit(X2, constant_y)), Error);

  // too few samples
  const std::vector<std::vector<double>> X3 = {{0}, {1}};
  const std::vector<double> y3 = {0, 1};
  CHECK_THROWS_AS(static_cast<void>(ols_fit(X3, y3)), Error);
}

TEST_CASE("ols_fit residuals are orthogonal to the design") {
  std::mt19937_64 rng(5150);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int n = 60;
  std::vector<std::vector<double>> X;
  std::vector<double> y;
  for (int i = 0; i < n; ++i) {
    std::vector<double> row = {normal(rng), normal(rng), normal(rng)};
    y.push_back(1.5 + row[0] - 2.0 * row[1] + 0.5 * row[2] + normal(rng));
    X.push_back(std::move(row));
  }
  const RegressionResult fit = ols_fit(X, y);
  std::vector<double> residuals;
  for (int i = 0; i < n; ++i)
    residuals.push_back(y[static_cast<std::size_t>(i)] -
                        predict(fit, X[static_cast<std::size_t>(i)]));
  double sum = 0.0;
  for (double r : residuals) sum += r;
  CHECK(std::fabs(sum) / n < 1e-8);
  for (int j = 0; j < 3; ++j) {
    double dot = 0.0;
    for (int i = 0; i < n; ++i)
      dot += residuals[static_cast<std::size_t>(i)] *
             X[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    CHECK(std::fabs(dot) / n < 1e-8);
  }
}

TEST_CASE("r_squared equals pearson squared for a single regressor") {
  std::mt19937_64 rng(777);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 20;
    std::vector<std::vector<double>> X;
    std::vector<double> x;
    std::vector<double> y;
    for (int i = 0; i < n; ++i) {
      const double v = normal(rng);
      x.push_back(v);
      X.push_back({v});
      y.push_back(0.3 * v + normal(rng));
    }
    const RegressionResult fit = ols_fit(X, y);
    const double r = pearson(x, y);
    CHECK(fit.r_squared == doctest::Approx(r * r).epsilon(1e-10));
  }
}

TEST_CASE("pearson basics") {
  const std::vector<double> x = {1, 2, 3};
  const std::vector<double> y = {1, 2, 4};
  CHECK(pearson(x, x) == doctest::Approx(1.0));
  std::vector<double> neg = {-1, -2, -3};
  CHECK(pearson(x, neg) == doctest::Approx(-1.0));
  CHECK(pearson(x, y) == doctest::Approx(0.981).epsilon(1e-3));
  const std::vector<double> constant = {5, 5, 5};
  CHECK_THROWS_AS(static_cast<void>(pearson(x, constant)), Error);
  const std::vector<double> two = {1, 2};
  CHECK_THROWS_AS(static_cast<void>(pearson(two, two)), Error);
}

TEST_CASE("partial correlation reduces to pearson when z is orthogonal") {
  // x and y vary over a grid; z is constructed orthogonal to both
  const std::vector<double> x = {1, -1, 1, -1, 1, -1, 1, -1};
  const std::vector<double> y = {1, 1, -1, -1, 1, 1, -1, -1};
  const std::vector<double> z = {1, 1, 1, 1, -1, -1, -1, -1};
  const double r_xy = pearson(x, y);
  const PartialCorrResult partial = partial_correlation(x, y, z);
  CHECK(partial.r == doctest::Approx(r_xy).epsilon(1e-12));
  CHECK(partial.df == 5);
}

TEST_CASE("partial correlation equals the residual-method oracle") {
  std::mt19937_64 rng(424242);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 30;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> z;
    for (int i = 0; i < n; ++i) {
      const double zi = normal(rng);
      z.push_back(zi);
      x.push_back(0.6 * zi + normal(rng));
      y.push_back(-0.4 * zi + normal(rng));
    }
    const PartialCorrResult partial = partial_correlation(x, y, z);
    const double oracle = testing::residual_partial_correlation(x, y, z);
    CHECK(partial.r == doctest::Approx(oracle).epsilon(1e-10));
  }
}

TEST_CASE("partial correlation is symmetric and scale-invariant in z") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int n = 25;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> z;
  for (int i = 0; i < n; ++i) {
    const double zi = normal(rng);
    z.push_back(zi);
    x.push_back(0.5 * zi + normal(rng));
    y.push_back(0.2 * zi + normal(rng));
  }
  const PartialCorrResult xy = partial_correlation(x, y, z);
  const PartialCorrResult yx = partial_correlation(y, x, z);
  CHECK(xy.r == doctest::Approx(yx.r).epsilon(1e-12));

  std::vector<double> z_scaled;
  for (double v : z) z_scaled.push_back(3.5 * v - 11.0);
  const PartialCorrResult rescaled = partial_correlation(x, y, z_scaled);
  CHECK(rescaled.r == doctest::Approx(xy.r).epsilon(1e-10));
}

TEST_CASE("zero partial correlation gives p = 1") {
  // mutually orthogonal +-1 patterns: r_xy = r_xz = r_yz = 0 exactly
  const std::vector<double> x = {1, -1, 1, -1, 1, -1, 1, -1};
  const std::vector<double> y = {1, 1, -1, -1, 1, 1, -1, -1};
  const std::vector<double> z = {1, 1, 1, 1, -1, -1, -1, -1};
  const PartialCorrResult partial = partial_correlation(x, y, z);
  CHECK(partial.r == 0.0);
  CHECK(partial.p_value == 1.0);
}

TEST_CASE("perfect confounds are rejected") {
  const std::vector<double> x = {1, 2, 3, 4, 5};
  const std::vector<double> y = {2, 1, 4, 3, 5};
  CHECK_THROWS_AS(static_cast<void>(partial_correlation(x, y, x)), Error);
  CHECK_THROWS_AS(static_cast<void>(partial_correlation(x, y, y)), Error);
}

TEST_CASE("t_two_tailed_p at the standard critical value") {
  CHECK(t_two_tailed_p(0.0, 7) == doctest::Approx(1.0));
  CHECK(t_two_tailed_p(12.706, 1) == doctest::Approx(0.05).epsilon(1e-3));
  CHECK(t_two_tailed_p(-12.706, 1) == doctest::Approx(0.05).epsilon(1e-3));
}

TEST_CASE("t_two_tailed_p with one degree of freedom matches arctan") {
  const double pi = std::acos(-1.0);
  for (double t = 0.0; t <= 40.0; t += 0.37) {
    const double closed_form = 1.0 - (2.0 / pi) * std::atan(t);
    CHECK(t_two_tailed_p(t, 1) == doctest::Approx(closed_form).epsilon(1e-10));
  }
}

TEST_CASE("t_two_tailed_p is monotone in |t| and approaches the normal tail") {
  double previous = 1.0;
  for (double t = 0.0; t <= 6.0; t += 0.25) {
    const double p = t_two_tailed_p(t, 9);
    CHECK(p <= previous + 1e-15);
    previous = p;
  }
  for (double t : {0.5, 1.0, 1.96, 2.5, 3.0}) {
    const double normal_tail = std::erfc(t / std::sqrt(2.0));
    CHECK(t_two_tailed_p(t, 1000) == doctest::Approx(normal_tail).epsilon(1e-3));
  }
}

TEST_CASE("f_upper_tail_p sanity") {
  CHECK(f_upper_tail_p(0.0, 3, 10) == doctest::Approx(1.0));
  // F(1, df) upper tail equals two-tailed t at t = sqrt(F)
  const double f = 4.3;
  CHECK(f_upper_tail_p(f, 1, 12) ==
        doctest::Approx(t_two_tailed_p(std::sqrt(f), 12)).epsilon(1e-12));
}

TEST_CASE("pearson_p_value matches the t machinery") {
  const double r = 0.692;
  const int n = 107;
  const double t = r * std::sqrt((n - 2) / (1.0 - r * r));
  CHECK(pearson_p_value(r, n) == doctest::Approx(t_two_tailed_p(t, n - 2)));
  CHECK(pearson_p_value(r, n) < 0.001);
}
