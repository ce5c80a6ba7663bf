#include "tailsep/separators.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "tailsep/error.hpp"
#include "tailsep/roots.hpp"

namespace tailsep {

namespace {

constexpr double kE = std::numbers::e;

void require_b(double b) {
  if (!(std::isfinite(b) && b > 0.0)) throw InvalidArgument("separator: b must be positive");
}

void require_gamma(double gamma) {
  if (!(std::isfinite(gamma) && gamma >= 0.0)) throw InvalidArgument("separator: gamma must be >= 0");
}

// Solves y exp(b sqrt(ln y)) = L for y >= 1 (y = ln x).
double solve_lw_rv_log(double b, double log_t) {
  if (log_t <= 1.0) return 1.0;
  auto g = [b](double y) { return std::log(y) + b * std::sqrt(std::log(y)); };
  roots::SolveOptions opt;
  opt.lower_limit = 1.0;
  opt.value_tolerance = 1e-15;
  auto slope = [b](double y) {
    const double ly = std::log(y);
    return (1.0 + 0.5 * b / std::sqrt(ly)) / y;
  };
  // Work with log of the defining equation: ln y + b sqrt(ln y) = ln ln t.
  return roots::solve_increasing(g, slope, std::log(log_t), log_t, opt);
}

}  // namespace

SeparatorCdf SeparatorCdf::weibull_vs_logweibull(double b) {
  require_b(b);
  return SeparatorCdf(SeparatorKind::weibull_vs_logweibull, b, 0.0, 1.0);
}

SeparatorCdf SeparatorCdf::logweibull_vs_rv(double b) {
  require_b(b);
  return SeparatorCdf(SeparatorKind::logweibull_vs_rv, b, 0.0, kE);
}

SeparatorCdf SeparatorCdf::standard_exponential() {
  return SeparatorCdf(SeparatorKind::standard_exponential, 1.0, 0.0, 0.0);
}

SeparatorCdf SeparatorCdf::custom(const DistributionSpec& spec, std::optional<double> gamma) {
  validate(spec);
  const auto index = gamma ? gamma : extreme_value_index(spec);
  if (!index) throw InvalidArgument("separator: distribution has no MDA index; pass gamma explicitly");
  require_gamma(*index);
  SeparatorCdf sep(SeparatorKind::custom, 1.0, *index, support_lower(spec));
  sep.custom_ = spec;
  return sep;
}

SeparatorCdf SeparatorCdf::with_gamma(double gamma) const {
  require_gamma(gamma);
  SeparatorCdf copy = *this;
  copy.gamma_ = gamma;
  return copy;
}

double SeparatorCdf::log_survival(double x) const {
  switch (kind_) {
    case SeparatorKind::weibull_vs_logweibull:
      if (x <= 1.0) return 0.0;
      return -std::exp(b_ * std::sqrt(std::log(x)));
    case SeparatorKind::logweibull_vs_rv: {
      if (x <= kE) return 0.0;
      const double lx = std::log(x);
      return -std::exp(b_ * std::sqrt(std::log(lx))) * lx;
    }
    case SeparatorKind::standard_exponential:
      return x <= 0.0 ? 0.0 : -x;
    case SeparatorKind::custom:
      return tailsep::log_survival(*custom_, x);
  }
  return 0.0;
}

double SeparatorCdf::cdf(double x) const { return -std::expm1(log_survival(x)); }

double SeparatorCdf::quantile_from_log(double log_t) const {
  switch (kind_) {
    case SeparatorKind::weibull_vs_logweibull: {
      if (log_t <= 1.0) return 1.0;
      const double r = std::log(log_t) / b_;
      return std::exp(r * r);
    }
    case SeparatorKind::logweibull_vs_rv:
      return std::exp(solve_lw_rv_log(b_, log_t));
    case SeparatorKind::standard_exponential:
      return log_t;
    case SeparatorKind::custom:
      return tailsep::quantile(*custom_, std::exp(log_t));
  }
  return 0.0;
}

double SeparatorCdf::quantile(double t) const {
  if (!(t > 1.0)) throw InvalidArgument("separator quantile: t must exceed 1");
  return quantile_from_log(std::log(t));
}

std::vector<double> SeparatorCdf::sample(std::size_t n, SeedBundle seed) const {
  if (kind_ == SeparatorKind::custom) return tailsep::sample(*custom_, n, seed);
  if (n == 0) throw InvalidArgument("sample: n must be at least 1");
  UniformStream stream(seed);
  std::vector<double> out(n);
  // 1/U = t, so ln t = -ln U.
  for (auto& x : out) x = quantile_from_log(-std::log(stream.next()));
  return out;
}

std::string SeparatorCdf::describe() const {
  std::ostringstream out;
  out.precision(17);
  switch (kind_) {
    case SeparatorKind::weibull_vs_logweibull:
      out << "w-lw(b=" << b_ << ")";
      break;
    case SeparatorKind::logweibull_vs_rv:
      out << "lw-rv(b=" << b_ << ")";
      break;
    case SeparatorKind::standard_exponential:
      out << "exp";
      break;
    case SeparatorKind::custom:
      out << to_string(*custom_);
      break;
  }
  return out.str();
}

double u0_weibull_vs_logweibull(double b, double t) {
  require_b(b);
  if (!(t > kE)) throw InvalidArgument("u0_weibull_vs_logweibull: t must exceed e");
  const double r = std::log(std::log(t)) / b;
  return std::exp(r * r);
}

double u0_logweibull_vs_rv(double b, double t) {
  require_b(b);
  if (!(t > 1.0)) throw InvalidArgument("u0_logweibull_vs_rv: t must exceed 1");
  return std::exp(solve_lw_rv_log(b, std::log(t)));
}

SeparatorCdf parse_separator(const std::string& token, double b, std::optional<double> gamma) {
  SeparatorCdf sep = SeparatorCdf::standard_exponential();
  if (token == "w-lw") {
    sep = SeparatorCdf::weibull_vs_logweibull(b);
  } else if (token == "lw-rv") {
    sep = SeparatorCdf::logweibull_vs_rv(b);
  } else if (token == "exp") {
    sep = SeparatorCdf::standard_exponential();
  } else {
    return SeparatorCdf::custom(parse_distribution(token), gamma);
  }
  return gamma ? sep.with_gamma(*gamma) : sep;
}

}  // namespace tailsep
