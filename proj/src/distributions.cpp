#include "tailsep/distributions.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/lambert_w.hpp>

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "tailsep/error.hpp"
#include "tailsep/roots.hpp"
#include "tailsep/special.hpp"

namespace tailsep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kInvE = 0.36787944117144232160;

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

DistributionSpec make(Family family, double p1, double p2) {
  DistributionSpec spec{family, p1, p2};
  validate(spec);
  return spec;
}

// log Q(a, y) for the regularized upper incomplete gamma, finite past underflow.
double log_gamma_q(double a, double y) {
  const double q = boost::math::gamma_q(a, y);
  if (q > 1e-300) return std::log(q);
  const double inv = 1.0 / y;
  const double series = 1.0 + (a - 1.0) * inv * (1.0 + (a - 2.0) * inv);
  return (a - 1.0) * std::log(y) - y - std::lgamma(a) + std::log(series);
}

double student_t_log_density(double nu, double x) {
  return std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) - 0.5 * std::log(nu * std::numbers::pi) -
         0.5 * (nu + 1.0) * std::log1p(x * x / nu);
}

// Upper tail of Student t for x >= 0.
double student_t_sf_positive(double nu, double x) {
  double ratio;
  if (x > 1e100) {
    const double r = std::sqrt(nu) / x;
    ratio = r * r / (1.0 + r * r);
  } else {
    ratio = nu / (nu + x * x);
  }
  return 0.5 * boost::math::ibeta(0.5 * nu, 0.5, ratio);
}

double modified_weibull_log_survival(double shape, double rate, double y) {
  if (y < -kInvE) return 0.0;
  const double w0 = boost::math::lambert_w0(std::max(y, -kInvE));
  if (y >= 0.0) return -rate * std::exp(shape * w0);
  // X ln X <= y < 0 holds for X between the two branches.
  const double wm1 = boost::math::lambert_wm1(std::max(y, -kInvE));
  const double s_low = std::exp(-rate * std::exp(shape * wm1));
  const double s_high = std::exp(-rate * std::exp(shape * w0));
  return std::log1p(-(s_low - s_high));
}

double log_survival_impl(const DistributionSpec& s, double x) {
  switch (s.family) {
    case Family::weibull:
      return x <= 0.0 ? 0.0 : -s.p2 * std::pow(x, s.p1);
    case Family::normal:
      return special::normal_log_sf((x - s.p1) / s.p2);
    case Family::gamma:
      return x <= 0.0 ? 0.0 : log_gamma_q(s.p1, s.p2 * x);
    case Family::modified_weibull:
      return modified_weibull_log_survival(s.p1, s.p2, x);
    case Family::extended_weibull:
      return x <= 0.0 ? 0.0 : -std::pow(x, s.p1) - std::log1p(x);
    case Family::lognormal:
      return x <= 0.0 ? 0.0 : special::normal_log_sf((std::log(x) - s.p1) / s.p2);
    case Family::log_weibull:
      return x <= s.p2 ? 0.0 : -std::pow(std::log(x / s.p2), s.p1);
    case Family::gpd:
      return x <= 0.0 ? 0.0 : -std::log1p(s.p1 * x / s.p2) / s.p1;
    case Family::student_t:
      if (x >= 0.0) return std::log(student_t_sf_positive(s.p1, x));
      return std::log1p(-student_t_sf_positive(s.p1, -x));
    case Family::cauchy:
      if (x >= 0.0) return std::log(std::atan2(1.0, x) / std::numbers::pi);
      return std::log1p(-std::atan2(1.0, -x) / std::numbers::pi);
    case Family::burr:
      return x <= 0.0 ? 0.0 : -s.p2 * std::log1p(std::pow(x, s.p1));
    case Family::exponential:
      return x <= s.p2 ? 0.0 : -s.p1 * (x - s.p2);
    case Family::pareto:
      return x <= s.p2 ? 0.0 : -s.p1 * std::log(x / s.p2);
  }
  return 0.0;
}

// Hazard rate f/S, the derivative of -log S; used as the Newton slope.
double hazard(const DistributionSpec& s, double x) {
  switch (s.family) {
    case Family::gamma: {
      const double y = s.p2 * x;
      const double log_pdf = s.p1 * std::log(s.p2) + (s.p1 - 1.0) * std::log(x) - y - std::lgamma(s.p1);
      return std::exp(log_pdf - log_gamma_q(s.p1, y));
    }
    case Family::extended_weibull:
      return s.p1 * std::pow(x, s.p1 - 1.0) + 1.0 / (1.0 + x);
    case Family::student_t:
      return std::exp(student_t_log_density(s.p1, x) - log_survival_impl(s, x));
    default:
      return 0.0;  // no Newton slope: bisection only
  }
}

// Numerical inverse of log S on the support; target_log_q < 0.
double invert_log_survival(const DistributionSpec& s, double log_q, double guess) {
  roots::SolveOptions opt;
  opt.lower_limit = support_lower(s);
  // |d(-log S)| error of 1e-13 keeps |1 - S(x) t| well below 1e-9.
  opt.value_tolerance = 1e-13 * std::max(1.0, -log_q);
  auto neg_log_sf = [&s](double x) { return -log_survival_impl(s, x); };
  auto slope = [&s](double x) { return hazard(s, x); };
  return roots::solve_increasing(neg_log_sf, slope, -log_q, guess, opt);
}

double inverse_log_survival(const DistributionSpec& s, double log_q) {
  if (!(log_q < 0.0)) throw SupportError("inverse survival: probability must lie in (0,1)");
  const double neg = -log_q;
  switch (s.family) {
    case Family::weibull:
      return std::pow(neg / s.p2, 1.0 / s.p1);
    case Family::normal: {
      if (neg > 700.0) return invert_log_survival(s, log_q, s.p1 + s.p2 * std::sqrt(2.0 * neg));
      return s.p1 + s.p2 * special::normal_upper_quantile(std::exp(log_q));
    }
    case Family::gamma:
      return invert_log_survival(s, log_q, std::max(s.p1, neg) / s.p2);
    case Family::modified_weibull: {
      if (neg >= s.p2) {
        const double x = std::pow(neg / s.p2, 1.0 / s.p1);
        return x * std::log(x);
      }
      return invert_log_survival(s, log_q, -0.5 * kInvE);
    }
    case Family::extended_weibull:
      return invert_log_survival(s, log_q, std::pow(neg, 1.0 / s.p1));
    case Family::lognormal: {
      if (neg > 700.0) {
        const DistributionSpec z = normal(s.p1, s.p2);
        return std::exp(inverse_log_survival(z, log_q));
      }
      return std::exp(s.p1 + s.p2 * special::normal_upper_quantile(std::exp(log_q)));
    }
    case Family::log_weibull:
      return s.p2 * std::exp(std::pow(neg, 1.0 / s.p1));
    case Family::gpd:
      return s.p2 * std::expm1(s.p1 * neg) / s.p1;
    case Family::student_t: {
      const double guess = log_q < -special::kLn2 ? std::expm1(neg / s.p1)
                                                   : -std::expm1(-std::log1p(-std::exp(log_q)) / s.p1);
      return invert_log_survival(s, log_q, guess);
    }
    case Family::cauchy: {
      const double q = std::exp(log_q);
      if (q <= 0.5) return 1.0 / std::tan(std::numbers::pi * q);
      return -1.0 / std::tan(std::numbers::pi * (1.0 - q));
    }
    case Family::burr:
      return std::pow(std::expm1(neg / s.p2), 1.0 / s.p1);
    case Family::exponential:
      return s.p2 + neg / s.p1;
    case Family::pareto:
      return s.p2 * std::exp(neg / s.p1);
  }
  return 0.0;
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_number(std::string_view text) {
  auto trim = [](std::string_view t) {
    while (!t.empty() && t.front() == ' ') t.remove_prefix(1);
    while (!t.empty() && t.back() == ' ') t.remove_suffix(1);
    return t;
  };
  text = trim(text);
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    return parse_number(text.substr(0, slash)) / parse_number(text.substr(slash + 1));
  }
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw InputError("not a number: '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

DistributionSpec weibull(double shape, double rate) { return make(Family::weibull, shape, rate); }
DistributionSpec normal(double mean, double sd) { return make(Family::normal, mean, sd); }
DistributionSpec gamma_dist(double shape, double rate) { return make(Family::gamma, shape, rate); }
DistributionSpec modified_weibull(double shape, double rate) {
  return make(Family::modified_weibull, shape, rate);
}
DistributionSpec extended_weibull(double shape) { return make(Family::extended_weibull, shape, 0.0); }
DistributionSpec lognormal(double mu, double sigma) { return make(Family::lognormal, mu, sigma); }
DistributionSpec log_weibull(double theta, double c) { return make(Family::log_weibull, theta, c); }
DistributionSpec gpd(double gamma, double sigma) { return make(Family::gpd, gamma, sigma); }
DistributionSpec student_t(double nu) { return make(Family::student_t, nu, 0.0); }
DistributionSpec cauchy() { return make(Family::cauchy, 0.0, 0.0); }
DistributionSpec burr(double c, double d) { return make(Family::burr, c, d); }
DistributionSpec exponential(double rate, double location) {
  return make(Family::exponential, rate, location);
}
DistributionSpec pareto(double alpha, double scale) { return make(Family::pareto, alpha, scale); }

void validate(const DistributionSpec& s) {
  switch (s.family) {
    case Family::normal:
    case Family::lognormal:
      require(std::isfinite(s.p1) && positive(s.p2), "location must be finite and scale positive");
      return;
    case Family::exponential:
      require(positive(s.p1) && std::isfinite(s.p2), "exponential: rate > 0, finite location");
      return;
    case Family::extended_weibull:
    case Family::student_t:
      require(positive(s.p1), "shape parameter must be positive");
      return;
    case Family::cauchy:
      return;
    case Family::weibull:
    case Family::gamma:
    case Family::modified_weibull:
    case Family::log_weibull:
    case Family::gpd:
    case Family::burr:
    case Family::pareto:
      require(positive(s.p1) && positive(s.p2), "parameters must be positive");
      return;
  }
}

std::string_view family_name(Family family) {
  switch (family) {
    case Family::weibull: return "weibull";
    case Family::normal: return "normal";
    case Family::gamma: return "gamma";
    case Family::modified_weibull: return "mweibull";
    case Family::extended_weibull: return "eweibull";
    case Family::lognormal: return "lognormal";
    case Family::log_weibull: return "logweibull";
    case Family::gpd: return "gpd";
    case Family::student_t: return "t";
    case Family::cauchy: return "cauchy";
    case Family::burr: return "burr";
    case Family::exponential: return "exp";
    case Family::pareto: return "pareto";
  }
  return "?";
}

std::string to_string(const DistributionSpec& s) {
  std::string out(family_name(s.family));
  switch (s.family) {
    case Family::cauchy:
      return out;
    case Family::extended_weibull:
    case Family::student_t:
      return out + "(" + format_number(s.p1) + ")";
    default:
      return out + "(" + format_number(s.p1) + "," + format_number(s.p2) + ")";
  }
}

DistributionSpec parse_distribution(std::string_view token) {
  std::string_view name = token;
  std::vector<double> args;
  const auto open = token.find('(');
  if (open != std::string_view::npos) {
    if (token.back() != ')') throw InputError("distribution token missing ')': " + std::string(token));
    name = token.substr(0, open);
    std::string_view inner = token.substr(open + 1, token.size() - open - 2);
    while (!inner.empty()) {
      const auto comma = inner.find(',');
      args.push_back(parse_number(inner.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      inner.remove_prefix(comma + 1);
    }
  }
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi) {
      throw InputError("wrong number of parameters for " + std::string(name));
    }
  };
  try {
    if (name == "weibull") { arity(2, 2); return weibull(args[0], args[1]); }
    if (name == "normal") { arity(2, 2); return normal(args[0], args[1]); }
    if (name == "gamma") { arity(2, 2); return gamma_dist(args[0], args[1]); }
    if (name == "mweibull") { arity(2, 2); return modified_weibull(args[0], args[1]); }
    if (name == "eweibull") { arity(0, 1); return extended_weibull(args.empty() ? 2.0 : args[0]); }
    if (name == "lognormal") { arity(2, 2); return lognormal(args[0], args[1]); }
    if (name == "logweibull") { arity(2, 2); return log_weibull(args[0], args[1]); }
    if (name == "gpd") { arity(2, 2); return gpd(args[0], args[1]); }
    if (name == "t") { arity(1, 1); return student_t(args[0]); }
    if (name == "cauchy") { arity(0, 0); return cauchy(); }
    if (name == "burr") { arity(2, 2); return burr(args[0], args[1]); }
    if (name == "exp") { arity(1, 2); return exponential(args[0], args.size() > 1 ? args[1] : 0.0); }
    if (name == "pareto") { arity(1, 2); return pareto(args[0], args.size() > 1 ? args[1] : 1.0); }
  } catch (const InvalidArgument& e) {
    throw InputError(std::string(token) + ": " + e.what());
  }
  throw InputError("unknown distribution family: " + std::string(name));
}

double support_lower(const DistributionSpec& s) {
  switch (s.family) {
    case Family::normal:
    case Family::student_t:
    case Family::cauchy:
      return -kInf;
    case Family::modified_weibull:
      return -kInvE;
    case Family::log_weibull:
    case Family::exponential:
    case Family::pareto:
      return s.p2;
    default:
      return 0.0;
  }
}

std::optional<double> extreme_value_index(const DistributionSpec& s) {
  switch (s.family) {
    case Family::gpd: return s.p1;
    case Family::student_t: return 1.0 / s.p1;
    case Family::cauchy: return 1.0;
    case Family::burr: return 1.0 / (s.p1 * s.p2);
    case Family::pareto: return 1.0 / s.p1;
    case Family::log_weibull:
      if (s.p1 > 1.0) return 0.0;
      if (s.p1 == 1.0) return 1.0;
      return std::nullopt;
    default:
      return 0.0;
  }
}

double log_survival(const DistributionSpec& spec, double x) {
  if (std::isnan(x)) throw InvalidArgument("log_survival: NaN argument");
  return log_survival_impl(spec, x);
}

double survival(const DistributionSpec& spec, double x) { return std::exp(log_survival(spec, x)); }

double cdf(const DistributionSpec& spec, double x) { return -std::expm1(log_survival(spec, x)); }

double quantile(const DistributionSpec& spec, double t) {
  if (!(t > 1.0)) throw InvalidArgument("quantile: t must exceed 1");
  if (t == kInf) return kInf;
  return inverse_log_survival(spec, -std::log(t));
}

double inverse_survival(const DistributionSpec& spec, double q) {
  if (!(q > 0.0 && q < 1.0)) throw InvalidArgument("inverse_survival: q must lie in (0,1)");
  return inverse_log_survival(spec, std::log(q));
}

std::vector<double> sample(const DistributionSpec& spec, std::size_t n, SeedBundle seed) {
  if (n == 0) throw InvalidArgument("sample: n must be at least 1");
  validate(spec);
  UniformStream stream(seed);
  std::vector<double> out(n);
  if (spec.family == Family::modified_weibull) {
    const DistributionSpec base{Family::weibull, spec.p1, spec.p2};
    for (auto& y : out) {
      const double e = inverse_log_survival(base, std::log(stream.next()));
      y = e * std::log(e);
    }
    return out;
  }
  for (auto& x : out) x = inverse_log_survival(spec, std::log(stream.next()));
  return out;
}

}  // namespace tailsep
