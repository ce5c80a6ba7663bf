#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "tailsep/distributions.hpp"
#include "tailsep/separators.hpp"

namespace tailsep {

enum class ConditionKind { c_delta, c_zero, b, prop1 };

std::string condition_name(ConditionKind kind);

// Outcome of checking a tail-ordering condition on a finite window. The
// conditions are asymptotic, so `holds` certifies the window only.
struct ConditionReport {
  ConditionKind condition = ConditionKind::c_zero;
  double parameter = 0.0;  // delta for C-conditions and Prop1, epsilon for B
  std::vector<double> t_grid;  // x grid for the B-condition
  std::vector<double> c_grid;  // empty for the B-condition
  double worst_margin = 0.0;
  bool holds = true;
  double witness_t = 0.0;
  double witness_c = 0.0;
};

inline constexpr double kConditionTolerance = 1e-12;

using QuantileFn = std::function<double(double)>;
using LogSurvivalFn = std::function<double(double)>;

// Quantile and log-survival of one cdf, as consumed by the checkers.
struct TailFunctions {
  QuantileFn quantile;
  LogSurvivalFn log_survival;
};

TailFunctions tail_functions(const DistributionSpec& spec);
TailFunctions tail_functions(const SeparatorCdf& sep);

std::vector<double> log_grid(double lo, double hi, std::size_t points);
// 40 points log-spaced on [1e6, 1e14].
std::vector<double> default_t_grid();
// 40 points log-spaced on (1, 1e3].
std::vector<double> default_c_grid();

// u_H(c^{1+delta} t) / u_G(c t) <= u_H(t) / u_G(t) on the grid. Margin is
// RHS - LHS.
ConditionReport check_C_delta(const QuantileFn& u_h, const QuantileFn& u_g, double delta,
                              const std::vector<double>& t_grid, const std::vector<double>& c_grid);

// (1 - H)^{1-eps} / (1 - G) nonincreasing along x_grid, checked on adjacent
// pairs in log space. Margin is the smallest decrease.
ConditionReport check_B_condition(const LogSurvivalFn& h, const LogSurvivalFn& g, double epsilon,
                                  const std::vector<double>& x_grid);

// (1-H(c u_H(t)))^{1-eps} / (1-H(u_H(t)))^{1-eps} <= (1-G(c u_G(t))) / (1-G(u_G(t)))
// with eps = 1 - 1/(1+delta), compared in log space.
ConditionReport check_prop1(const TailFunctions& h, const TailFunctions& g, double delta,
                            const std::vector<double>& t_grid, const std::vector<double>& c_grid);

}  // namespace tailsep
