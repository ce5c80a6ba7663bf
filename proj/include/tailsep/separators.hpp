#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tailsep/distributions.hpp"
#include "tailsep/rng.hpp"

namespace tailsep {

enum class SeparatorKind {
  weibull_vs_logweibull,  // 1 - F0 = exp(-exp(b sqrt(ln x))), x > 1
  logweibull_vs_rv,       // 1 - F0 = exp(-exp(b sqrt(ln ln x)) ln x), x > e
  standard_exponential,
  custom,                 // any DistributionSpec
};

// The separating distribution F0 used by the tail statistics.
//
// Both closed-form separators put an atom at their left support edge
// (mass 1 - 1/e), so quantile(t) for t <= e returns that edge.
class SeparatorCdf {
 public:
  static SeparatorCdf weibull_vs_logweibull(double b);
  static SeparatorCdf logweibull_vs_rv(double b);
  static SeparatorCdf standard_exponential();
  // gamma defaults to the family's extreme value index.
  static SeparatorCdf custom(const DistributionSpec& spec, std::optional<double> gamma = std::nullopt);

  // Same separator with the MDA index used by the location-scale-free test
  // replaced.
  SeparatorCdf with_gamma(double gamma) const;

  SeparatorKind kind() const { return kind_; }
  double b() const { return b_; }
  double gamma() const { return gamma_; }
  double domain_lower() const { return domain_lower_; }
  const std::optional<DistributionSpec>& distribution() const { return custom_; }

  double log_survival(double x) const;
  double cdf(double x) const;
  // u0(t) = F0^{-1}(1 - 1/t), t > 1.
  double quantile(double t) const;
  std::vector<double> sample(std::size_t n, SeedBundle seed) const;

  std::string describe() const;

 private:
  SeparatorCdf(SeparatorKind kind, double b, double gamma, double lower)
      : kind_(kind), b_(b), gamma_(gamma), domain_lower_(lower) {}

  double quantile_from_log(double log_t) const;

  SeparatorKind kind_;
  double b_;
  double gamma_;
  double domain_lower_;
  std::optional<DistributionSpec> custom_;
};

// exp((ln ln t / b)^2); defined for t > e.
double u0_weibull_vs_logweibull(double b, double t);
// Root x > e of exp(b sqrt(ln ln x)) ln x = ln t; e for t <= e.
double u0_logweibull_vs_rv(double b, double t);

// Parses "w-lw", "lw-rv", "exp" or a distribution token ("pareto(1,1)").
SeparatorCdf parse_separator(const std::string& token, double b, std::optional<double> gamma);

}  // namespace tailsep
