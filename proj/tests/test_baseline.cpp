#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "tailsep/baseline.hpp"
#include "tailsep/distributions.hpp"
#include "tailsep/error.hpp"

using namespace tailsep;

TEST(Baseline, HasoferWangHandValue) {
  const SortedSample s({0.5, 1.0, 2.0, 6.0});
  EXPECT_NEAR(hasofer_wang(s, 3), 12.0 / 28.0, 1e-12);
}

TEST(Baseline, HasoferWangPreconditions) {
  const SortedSample s({0.5, 1.0, 2.0, 6.0});
  EXPECT_THROW(hasofer_wang(s, 1), InvalidArgument);
  EXPECT_THROW(hasofer_wang(s, 4), InvalidArgument);
  EXPECT_THROW(hasofer_wang(SortedSample({1.0, 2.0, 2.0, 2.0}), 3), InvalidArgument);
}

TEST(Baseline, RatioHandValue) {
  const SortedSample s({0.5, 1.0, 2.0, 6.0});
  EXPECT_NEAR(ratio_statistic(s, 2), 5.0 / 3.0, 1e-12);
  EXPECT_THROW(ratio_statistic(SortedSample({1.0, 2.0, 2.0, 2.0}), 2), InvalidArgument);
}

TEST(Baseline, AffineInvariance) {
  const auto x = sample(gamma_dist(2.0, 1.0), 1000, {4, 2});
  const SortedSample s(x);
  for (double a : {0.01, 2.0, 300.0}) {
    for (double b : {-40.0, 0.0, 9.0}) {
      auto y = x;
      for (double& v : y) v = a * v + b;
      const SortedSample t(y);
      EXPECT_NEAR(hasofer_wang(t, 80), hasofer_wang(s, 80), 1e-10);
      EXPECT_NEAR(ratio_statistic(t, 80), ratio_statistic(s, 80), 1e-10);
    }
  }
}

TEST(Baseline, TableMonotoneInAlpha) {
  const auto t = calibrate_critical_values(BaselineKind::ratio, {0.01, 0.05, 0.1}, {50, 100}, 500, 2000, 3, Side::right);
  for (std::size_t j = 0; j < 2; ++j) {
    EXPECT_GT(t.values[0][j], t.values[1][j]);
    EXPECT_GT(t.values[1][j], t.values[2][j]);
  }
  const auto l = calibrate_critical_values(BaselineKind::hasofer_wang, {0.01, 0.05, 0.1}, {50, 100}, 500, 2000, 3, Side::left);
  for (std::size_t j = 0; j < 2; ++j) {
    EXPECT_LT(l.values[0][j], l.values[1][j]);
    EXPECT_LT(l.values[1][j], l.values[2][j]);
  }
}

TEST(Baseline, CalibrationReproducible) {
  auto run = [] { return to_csv(calibrate_critical_values(BaselineKind::hasofer_wang, {0.05}, {20, 40}, 300, 1000, 17, Side::left, 3)); };
  const auto a = run();
  EXPECT_EQ(a, run());
  EXPECT_EQ(a, to_csv(calibrate_critical_values(BaselineKind::hasofer_wang, {0.05}, {20, 40}, 300, 1000, 17, Side::left, 1)));
  EXPECT_EQ(a.substr(0, a.find('\n')), "k,alpha_0.05");
}

TEST(Baseline, CalibrationNeedsThousandReplications) {
  EXPECT_THROW(calibrate_critical_values(BaselineKind::ratio, {0.05}, {10}, 100, 999, 1, Side::right), InvalidArgument);
}

// Independent brute-force run with its own generator and sorting.
TEST(Baseline, RatioCriticalValueMatchesBruteForce) {
  const std::size_t n = 1000, k = 100, m = 4000;
  const auto table = calibrate_critical_values(BaselineKind::ratio, {0.05}, {k}, n, m, 2024, Side::right);
  std::mt19937 gen(77);
  std::exponential_distribution<double> e(1.0);
  std::vector<double> draws;
  for (std::size_t r = 0; r < m; ++r) {
    std::vector<double> x(n);
    for (double& v : x) v = e(gen);
    std::sort(x.begin(), x.end(), std::greater<>());
    double mean = 0.0;
    for (std::size_t i = 0; i < k; ++i) mean += x[i];
    mean /= static_cast<double>(k);
    draws.push_back((x[0] - x[k]) / (mean - x[k]));
  }
  std::sort(draws.begin(), draws.end());
  const double brute = draws[static_cast<std::size_t>(0.95 * m)];
  // standard error of the empirical quantile from the order-statistic interval
  const double lo = draws[static_cast<std::size_t>(0.95 * m - std::sqrt(0.95 * 0.05 * m))];
  const double hi = draws[static_cast<std::size_t>(0.95 * m + std::sqrt(0.95 * 0.05 * m))];
  const double se = 0.5 * (hi - lo);
  EXPECT_NEAR(table.critical_value(0.05, k), brute, 2.0 * std::sqrt(2.0) * se);
}

TEST(Baseline, NullRejectionRateNearAlpha) {
  const std::size_t n = 400, m = 2000;
  const auto table = calibrate_critical_values(BaselineKind::ratio, {0.1}, {40}, n, m, 5, Side::right);
  int rejected = 0;
  const int reps = 2000;
  for (int r = 0; r < reps; ++r) {
    const SortedSample s(sample(exponential(1.0), n, {555, static_cast<std::uint64_t>(r)}));
    rejected += table.rejects(ratio_statistic(s, 40), 0.1, 40) ? 1 : 0;
  }
  const double rate = static_cast<double>(rejected) / reps;
  EXPECT_NEAR(rate, 0.1, 3.0 * std::sqrt(0.1 * 0.9 * (1.0 / reps + 1.0 / m)) + 0.01);
}

TEST(Baseline, Names) {
  EXPECT_EQ(parse_baseline("hasofer-wang"), BaselineKind::hasofer_wang);
  EXPECT_EQ(parse_baseline(baseline_name(BaselineKind::ratio)), BaselineKind::ratio);
  EXPECT_EQ(default_side(BaselineKind::hasofer_wang), Side::left);
  EXPECT_EQ(default_side(BaselineKind::ratio), Side::right);
}
