#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tailsep/rng.hpp"

namespace tailsep {

enum class Family {
  weibull,           // 1 - F = exp(-rate * x^shape), x > 0
  normal,            // N(mean, sd)
  gamma,             // density rate^shape x^(shape-1) e^(-rate x) / Gamma(shape)
  modified_weibull,  // law of Y = X ln X with X ~ weibull(shape, rate)
  extended_weibull,  // 1 - F = e^(-x^shape) / (x + 1), x > 0
  lognormal,         // exp(N(mu, sigma))
  log_weibull,       // 1 - F = exp(-(ln(x/c))^theta), x > c
  gpd,               // 1 - F = (1 + gamma x / sigma)^(-1/gamma), x > 0, gamma > 0
  student_t,         // t with nu degrees of freedom
  cauchy,            // standard Cauchy
  burr,              // Burr XII: 1 - F = (1 + x^c)^(-d), x > 0
  exponential,       // 1 - F = exp(-rate (x - location)), x > location
  pareto,            // 1 - F = (x / scale)^(-alpha), x > scale
};

// A fully specified member of one of the families above. Build these with the
// factory functions below; they validate the parameters.
struct DistributionSpec {
  Family family = Family::exponential;
  double p1 = 1.0;
  double p2 = 0.0;

  friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;
};

DistributionSpec weibull(double shape, double rate);
DistributionSpec normal(double mean, double sd);
DistributionSpec gamma_dist(double shape, double rate);
DistributionSpec modified_weibull(double shape, double rate);
DistributionSpec extended_weibull(double shape);
DistributionSpec lognormal(double mu, double sigma);
DistributionSpec log_weibull(double theta, double c);
DistributionSpec gpd(double gamma, double sigma);
DistributionSpec student_t(double nu);
DistributionSpec cauchy();
DistributionSpec burr(double c, double d);
DistributionSpec exponential(double rate, double location = 0.0);
DistributionSpec pareto(double alpha, double scale = 1.0);

// Throws InvalidArgument when the parameters violate the family constraints.
void validate(const DistributionSpec& spec);

std::string_view family_name(Family family);
// Human-readable token, e.g. "gpd(0.5,1)". parse_distribution() reads it back.
std::string to_string(const DistributionSpec& spec);
DistributionSpec parse_distribution(std::string_view token);

// Left end of the support (-inf for normal, t, Cauchy).
double support_lower(const DistributionSpec& spec);
// Extreme value index of the family's maximum domain of attraction, when the
// family belongs to one.
std::optional<double> extreme_value_index(const DistributionSpec& spec);

double cdf(const DistributionSpec& spec, double x);
double survival(const DistributionSpec& spec, double x);
double log_survival(const DistributionSpec& spec, double x);

// u(t) = F^{-1}(1 - 1/t) for t > 1.
double quantile(const DistributionSpec& spec, double t);
// x with 1 - F(x) = q for q in (0, 1).
double inverse_survival(const DistributionSpec& spec, double q);

// n i.i.d. draws, x_i = inverse_survival(U_i) for the uniform stream `seed`.
std::vector<double> sample(const DistributionSpec& spec, std::size_t n, SeedBundle seed);

}  // namespace tailsep
