#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tailsep/tail_tests.hpp"

namespace tailsep {

enum class BaselineKind { hasofer_wang, ratio };

std::string baseline_name(BaselineKind kind);
BaselineKind parse_baseline(const std::string& text);
// Rejection side against heavier (Frechet-type) tails: W_n(k) shrinks, R_n(k) grows.
Side default_side(BaselineKind kind);

// Shapiro-Wilk type statistic of Hasofer and Wang on the top k.
double hasofer_wang(const SortedSample& sample, std::size_t k);
// (X_(n) - X_(n-k)) / (mean of top k - X_(n-k)).
double ratio_statistic(const SortedSample& sample, std::size_t k);
double baseline_statistic(BaselineKind kind, const SortedSample& sample, std::size_t k);

// Critical values from Monte-Carlo samples of the standard exponential.
struct CriticalValueTable {
  BaselineKind kind = BaselineKind::ratio;
  Side side = Side::right;
  std::vector<double> alphas;
  std::vector<std::size_t> k_grid;
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  // values[a][j]: critical value for alphas[a] at k_grid[j].
  std::vector<std::vector<double>> values;

  double critical_value(double alpha, std::size_t k) const;
  bool rejects(double statistic, double alpha, std::size_t k) const;
};

// Empirical quantile used as a critical value: the (1 - alpha) quantile for
// right-side rejection, the alpha quantile for left-side rejection.
double empirical_critical_value(std::vector<double> draws, double alpha, Side side);

CriticalValueTable calibrate_critical_values(BaselineKind kind, const std::vector<double>& alphas,
                                             const std::vector<std::size_t>& k_grid, std::size_t n,
                                             std::size_t m, std::uint64_t seed, Side side,
                                             unsigned threads = 0);

// Columns: k, then one column per alpha.
std::string to_csv(const CriticalValueTable& table);

}  // namespace tailsep
