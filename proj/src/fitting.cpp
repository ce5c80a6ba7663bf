#include "tailsep/fitting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "tailsep/error.hpp"
#include "tailsep/roots.hpp"

namespace tailsep {

namespace {

constexpr double kGpdZero = 1e-9;

std::vector<double> checked_sorted(const std::vector<double>& data, const char* who) {
  if (data.empty()) throw InvalidArgument(std::string(who) + ": empty sample");
  std::vector<double> x(data);
  for (double v : x) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string(who) + ": data must be positive and finite");
  }
  std::sort(x.begin(), x.end());
  return x;
}

double sum(const std::vector<double>& x) { return std::accumulate(x.begin(), x.end(), 0.0); }

double weibull_log_likelihood(const std::vector<double>& x, double shape, double rate) {
  double s_log = 0.0;
  double s_pow = 0.0;
  for (double v : x) {
    s_log += std::log(v);
    s_pow += std::pow(v, shape);
  }
  const auto n = static_cast<double>(x.size());
  return n * std::log(shape) + n * std::log(rate) + (shape - 1.0) * s_log - rate * s_pow;
}

[[noreturn]] void brent_failure(const char* what, double lo, double hi, std::uintmax_t iterations) {
  std::ostringstream msg;
  msg.precision(17);
  msg << what << ": no convergence after " << iterations << " iterations, bracket [" << lo << ", " << hi << "]";
  throw NonConvergence(msg.str());
}

// Maximizes the GPD likelihood over log(scale) for a fixed shape, data scaled to unit mean.
std::pair<double, double> profile_scale(const std::vector<double>& y, double shape, std::uintmax_t& evals) {
  double lo = -30.0;
  if (shape < 0.0) lo = std::max(lo, std::log(-shape * y.back()) + 1e-12);
  const double hi = 30.0;
  std::uintmax_t iterations = 200;
  auto neg = [&](double log_scale) { return -gpd_log_likelihood(y, shape, std::exp(log_scale)); };
  const auto [arg, value] = boost::math::tools::brent_find_minima(neg, lo, hi, 52, iterations);
  evals += iterations;
  if (iterations >= 200) brent_failure("fit_gpd (scale)", lo, hi, iterations);
  return {arg, -value};
}

}  // namespace

std::string fit_model_name(FitModel model) {
  switch (model) {
    case FitModel::exponential: return "exponential";
    case FitModel::weibull2: return "weibull2";
    case FitModel::gpd: return "gpd";
  }
  return "?";
}

FitResult fit_exponential(const std::vector<double>& data) {
  const auto x = checked_sorted(data, "fit_exponential");
  const auto n = static_cast<double>(x.size());
  const double total = sum(x);
  FitResult r;
  r.model = FitModel::exponential;
  r.rate = n / total;
  r.scale = 1.0 / r.rate;
  r.shape = 1.0;
  r.log_likelihood = n * std::log(r.rate) - r.rate * total;
  r.n = x.size();
  return r;
}

FitResult fit_weibull2(const std::vector<double>& data, std::optional<double> fixed_shape) {
  const auto x = checked_sorted(data, "fit_weibull2");
  const auto n = static_cast<double>(x.size());
  FitResult r;
  r.model = FitModel::weibull2;
  r.n = x.size();

  if (fixed_shape) {
    if (!(*fixed_shape > 0.0)) throw InvalidArgument("fit_weibull2: fixed shape must be positive");
    double s_pow = 0.0;
    for (double v : x) s_pow += std::pow(v, *fixed_shape);
    r.shape = *fixed_shape;
    r.rate = n / s_pow;
  } else {
    if (x.front() == x.back()) throw InvalidArgument("fit_weibull2: all observations equal");
    const double top = x.back();
    std::vector<double> ly(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) ly[i] = std::log(x[i] / top);
    const double mean_ly = sum(ly) / n;

    // weighted moments of ln y under weights y^a
    auto moments = [&](double a) {
      double w = 0.0, m1 = 0.0, m2 = 0.0;
      for (double l : ly) {
        const double e = std::exp(a * l);
        w += e;
        m1 += e * l;
        m2 += e * l * l;
      }
      return std::array<double, 3>{w, m1 / w, m2 / w};
    };
    int evals = 0;
    auto g = [&](double a) {
      ++evals;
      const auto m = moments(a);
      return m[1] - 1.0 / a - mean_ly;
    };
    auto dg = [&](double a) {
      const auto m = moments(a);
      return (m[2] - m[1] * m[1]) + 1.0 / (a * a);
    };
    roots::SolveOptions opt;
    opt.lower_limit = 0.0;
    opt.value_tolerance = 1e-14;
    r.shape = roots::solve_increasing(g, dg, 0.0, 1.0, opt);
    r.iterations = evals;
    const double w = moments(r.shape)[0];
    // rate for unscaled data: n / sum (top y)^a = n / (w top^a)
    r.rate = std::exp(std::log(n / w) - r.shape * std::log(top));
  }
  r.scale = std::pow(r.rate, -1.0 / r.shape);
  r.log_likelihood = weibull_log_likelihood(x, r.shape, r.rate);
  return r;
}

double gpd_log_likelihood(const std::vector<double>& data, double shape, double scale) {
  if (!(scale > 0.0)) return -std::numeric_limits<double>::infinity();
  const auto n = static_cast<double>(data.size());
  double ll = -n * std::log(scale);
  if (std::abs(shape) < kGpdZero) {
    for (double v : data) ll -= v / scale;
    return ll;
  }
  const double c = 1.0 + 1.0 / shape;
  for (double v : data) {
    const double z = shape * v / scale;
    if (!(z > -1.0)) return -std::numeric_limits<double>::infinity();
    ll -= c * std::log1p(z);
  }
  return ll;
}

FitResult fit_gpd(const std::vector<double>& data) {
  const auto x = checked_sorted(data, "fit_gpd");
  const auto n = static_cast<double>(x.size());
  if (x.size() < 3) throw InvalidArgument("fit_gpd: need at least 3 observations");
  const double mean = sum(x) / n;
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] / mean;

  std::uintmax_t evals = 0;
  auto neg_profile = [&](double shape) { return -profile_scale(y, shape, evals).second; };
  std::uintmax_t iterations = 200;
  const auto best = boost::math::tools::brent_find_minima(neg_profile, kGpdShapeLower, kGpdShapeUpper, 40, iterations);
  if (iterations >= 200) brent_failure("fit_gpd (shape)", kGpdShapeLower, kGpdShapeUpper, iterations);

  FitResult r;
  r.model = FitModel::gpd;
  r.n = x.size();
  r.shape = best.first;
  r.scale = std::exp(profile_scale(y, r.shape, evals).first) * mean;
  r.rate = 1.0 / r.scale;
  r.log_likelihood = gpd_log_likelihood(x, r.shape, r.scale);
  r.iterations = static_cast<int>(evals);
  if (!std::isfinite(r.log_likelihood)) throw NonConvergence("fit_gpd: non-finite log-likelihood at optimum");
  return r;
}

double fitted_quantile(const FitResult& fit, double p) {
  if (!(p > 0.0 && p < 1.0)) throw SupportError("fitted_quantile: p must lie in (0,1)");
  const double e = -std::log1p(-p);
  switch (fit.model) {
    case FitModel::exponential: return e / fit.rate;
    case FitModel::weibull2: return std::pow(e / fit.rate, 1.0 / fit.shape);
    case FitModel::gpd:
      if (std::abs(fit.shape) < kGpdZero) return fit.scale * e;
      return fit.scale * std::expm1(fit.shape * e) / fit.shape;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

std::vector<QQRow> qq_table(const std::vector<double>& data, const FitResult& gpd_fit, const FitResult& weibull_fit) {
  if (data.empty()) throw InvalidArgument("qq_table: empty sample");
  std::vector<double> x(data);
  std::sort(x.begin(), x.end());
  const auto n = static_cast<double>(x.size());
  std::vector<QQRow> rows;
  rows.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double p = static_cast<double>(i + 1) / (n + 1.0);
    rows.push_back({-std::log1p(-p), x[i], fitted_quantile(gpd_fit, p), fitted_quantile(weibull_fit, p)});
  }
  return rows;
}

}  // namespace tailsep
