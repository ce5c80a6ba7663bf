#include "tailsep/k_behavior.hpp"

#include <cmath>
#include <map>

#include "tailsep/error.hpp"

namespace tailsep {

namespace {

int sign(double v) { return (v > 0.0) - (v < 0.0); }

double tie_term(const std::vector<double>& v, double (*f)(double)) {
  std::map<double, std::size_t> counts;
  for (double x : v) ++counts[x];
  double sum = 0.0;
  for (const auto& [value, t] : counts) sum += f(static_cast<double>(t));
  return sum;
}

double pairs(double t) { return t * (t - 1.0) / 2.0; }
double mk_var(double t) { return t * (t - 1.0) * (2.0 * t + 5.0); }

// First index from which the predicate holds for every later point; size() if none.
template <class Pred>
std::size_t settled_from(const std::vector<double>& scores, Pred pred) {
  std::size_t i = scores.size();
  while (i > 0 && pred(scores[i - 1])) --i;
  return i;
}

}  // namespace

std::string k_behavior_name(KBehaviorClass c) {
  switch (c) {
    case KBehaviorClass::increasing_reject: return "increasing_reject";
    case KBehaviorClass::decreasing_accept: return "decreasing_accept";
    case KBehaviorClass::oscillating: return "oscillating";
  }
  return "?";
}

double kendall_tau(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw InvalidArgument("kendall_tau: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw InvalidArgument("kendall_tau: need at least 2 points");
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) s += sign(x[j] - x[i]) * sign(y[j] - y[i]);
  }
  const double n0 = pairs(static_cast<double>(n));
  const double denom = std::sqrt((n0 - tie_term(x, pairs)) * (n0 - tie_term(y, pairs)));
  if (denom == 0.0) return 0.0;
  return s / denom;
}

double mann_kendall_z(const std::vector<double>& series) {
  const std::size_t n = series.size();
  if (n < 3) throw InvalidArgument("mann_kendall_z: need at least 3 points");
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) s += sign(series[j] - series[i]);
  }
  const double var = (mk_var(static_cast<double>(n)) - tie_term(series, mk_var)) / 18.0;
  if (var <= 0.0) return 0.0;
  if (s > 0.0) return (s - 1.0) / std::sqrt(var);
  if (s < 0.0) return (s + 1.0) / std::sqrt(var);
  return 0.0;
}

KBehavior classify_k_behavior(const std::vector<std::size_t>& k_grid, const std::vector<double>& scores, double u,
                              const KBehaviorParams& params) {
  if (k_grid.size() != scores.size()) throw InvalidArgument("classify_k_behavior: length mismatch");
  if (k_grid.size() < 10) throw InvalidArgument("classify_k_behavior: need at least 10 k-points");
  for (double s : scores) {
    if (!std::isfinite(s)) throw InvalidArgument("classify_k_behavior: non-finite score");
  }

  std::vector<double> ks(k_grid.begin(), k_grid.end());
  KBehavior out;
  out.trend_stat = kendall_tau(ks, scores);
  const auto early = static_cast<std::size_t>(std::floor(params.immediate_fraction * static_cast<double>(scores.size())));

  const std::size_t above_from = settled_from(scores, [u](double s) { return s > u; });
  const std::size_t below_from = settled_from(scores, [u](double s) { return s <= u; });

  if (out.trend_stat >= params.tau_threshold && above_from <= early) {
    out.cls = KBehaviorClass::increasing_reject;
    out.reject = true;
  } else if (out.trend_stat <= -params.tau_threshold && below_from <= early) {
    out.cls = KBehaviorClass::decreasing_accept;
    out.reject = false;
  } else {
    out.cls = KBehaviorClass::oscillating;
  }

  std::size_t count = 0;
  std::size_t exceed = 0;
  out.k_min = k_grid.front();
  out.k_max = k_grid.front();
  for (std::size_t i = 0; i < k_grid.size(); ++i) {
    if (k_grid[i] > params.small_k_max) continue;
    if (count == 0) out.k_min = k_grid[i];
    out.k_max = k_grid[i];
    ++count;
    exceed += scores[i] > u ? 1 : 0;
  }
  if (count == 0) {
    // whole grid lies above the small-k cutoff
    out.k_min = k_grid.front();
    out.k_max = k_grid.back();
    count = scores.size();
    for (double s : scores) exceed += s > u ? 1 : 0;
  }
  out.exceed_fraction = static_cast<double>(exceed) / static_cast<double>(count);
  if (out.cls == KBehaviorClass::oscillating) out.reject = out.exceed_fraction > params.alpha;
  return out;
}

}  // namespace tailsep
