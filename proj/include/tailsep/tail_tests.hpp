#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tailsep/separators.hpp"

namespace tailsep {

// The upper order statistics of a sample of size n().
//
// Normally all n values are observed. In external-n mode only the largest
// observed() values are known: they are X_(n-observed()+1) <= ... <= X_(n).
class SortedSample {
 public:
  explicit SortedSample(std::vector<double> values);
  SortedSample(std::vector<double> upper_values, std::size_t population_n);

  std::size_t n() const { return n_; }
  std::size_t observed() const { return values_.size(); }
  std::span<const double> values() const { return values_; }

  // X_(j), 1-based. Throws InvalidArgument for unobserved ranks.
  double order_stat(std::size_t j) const;
  // X_(n-k+1), ..., X_(n).
  std::span<const double> top(std::size_t k) const;

 private:
  std::vector<double> values_;
  std::size_t n_;
};

enum class Side { right, left };

std::string side_name(Side side);
Side parse_side(const std::string& text);

struct TestOutcome {
  double statistic = 0.0;  // raw statistic S
  double score = 0.0;      // sqrt(k) (S - 1)
  double sigma = 1.0;      // 1, or sigma(gamma) for the location-scale-free test
  double threshold = 0.0;  // reject when score is beyond this (score scale)
  double p_value = 0.5;
  bool reject = false;
  Side side = Side::right;
  std::size_t k = 0;
  std::size_t n = 0;
};

// ln(1-F0(X_(n-k))) - mean of ln(1-F0(X_(i))) over the top k.
double compute_R(const SortedSample& sample, std::size_t k, const SeparatorCdf& f0);
// Scale-free statistic: F0 evaluated at u0(n/k) X_(i) / X_(n-k).
double compute_tilde_R(const SortedSample& sample, std::size_t k, const SeparatorCdf& f0);
// Location-scale-free statistic: F0 evaluated at
// u0(n/k) + (X_(i) - X_(n-k)) / (X_(n-k) - X_(n-2k)) (u0(n/k) - u0(n/(2k))).
double compute_hat_R(const SortedSample& sample, std::size_t k, const SeparatorCdf& f0);

// Asymptotic variance of sqrt(k)(hat R - 1) when F0 is in the domain of
// attraction with index gamma >= 0.
double sigma2(double gamma);

// Turns a statistic into a decision at level alpha in (0, 1].
TestOutcome decide(double statistic, std::size_t k, std::size_t n, double sigma, double alpha, Side side);

TestOutcome scale_free_test(const SortedSample& sample, std::size_t k, const SeparatorCdf& f0,
                            double alpha, Side side);
TestOutcome location_scale_free_test(const SortedSample& sample, std::size_t k, const SeparatorCdf& f0,
                                     double alpha, Side side);

}  // namespace tailsep
