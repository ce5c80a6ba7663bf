#include "tailsep/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tailsep/distributions.hpp"
#include "tailsep/error.hpp"
#include "tailsep/format.hpp"
#include "tailsep/parallel.hpp"

namespace tailsep {

namespace {

double top_mean(std::span<const double> top) {
  double sum = 0.0;
  for (double x : top) sum += x;
  return sum / static_cast<double>(top.size());
}

}  // namespace

std::string baseline_name(BaselineKind kind) {
  return kind == BaselineKind::hasofer_wang ? "hasofer-wang" : "ratio";
}

BaselineKind parse_baseline(const std::string& text) {
  if (text == "hasofer-wang") return BaselineKind::hasofer_wang;
  if (text == "ratio") return BaselineKind::ratio;
  throw InputError("unknown baseline statistic '" + text + "'");
}

Side default_side(BaselineKind kind) { return kind == BaselineKind::hasofer_wang ? Side::left : Side::right; }

double hasofer_wang(const SortedSample& sample, std::size_t k) {
  if (k < 2 || k >= sample.n()) throw InvalidArgument("hasofer_wang: need 2 <= k < n");
  const auto top = sample.top(k);
  const double mean = top_mean(top);
  double ss = 0.0;
  for (double x : top) ss += (mean - x) * (mean - x);
  if (!(ss > 0.0)) throw InvalidArgument("hasofer_wang: top-k values are all equal");
  const double lead = mean - top.front();  // top.front() = X_(n-k+1)
  const double kd = static_cast<double>(k);
  return kd * lead * lead / ((kd - 1.0) * ss);
}

double ratio_statistic(const SortedSample& sample, std::size_t k) {
  if (k < 1 || k >= sample.n()) throw InvalidArgument("ratio_statistic: need 1 <= k < n");
  const double base = sample.order_stat(sample.n() - k);
  const auto top = sample.top(k);
  const double excess = top_mean(top) - base;
  if (!(excess > 0.0)) throw InvalidArgument("ratio_statistic: zero mean excess");
  return (top.back() - base) / excess;
}

double baseline_statistic(BaselineKind kind, const SortedSample& sample, std::size_t k) {
  return kind == BaselineKind::hasofer_wang ? hasofer_wang(sample, k) : ratio_statistic(sample, k);
}

double empirical_critical_value(std::vector<double> draws, double alpha, Side side) {
  if (draws.empty()) throw InvalidArgument("empirical_critical_value: no draws");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0,1)");
  std::sort(draws.begin(), draws.end());
  const double m = static_cast<double>(draws.size());
  if (side == Side::right) {
    // At most floor(alpha m) draws lie strictly above the returned value.
    const auto idx = static_cast<std::size_t>(std::ceil((1.0 - alpha) * m)) - 1;
    return draws[std::min(idx, draws.size() - 1)];
  }
  const auto idx = static_cast<std::size_t>(std::floor(alpha * m));
  return draws[std::min(idx, draws.size() - 1)];
}

double CriticalValueTable::critical_value(double alpha, std::size_t k) const {
  const auto a = std::find(alphas.begin(), alphas.end(), alpha);
  const auto j = std::find(k_grid.begin(), k_grid.end(), k);
  if (a == alphas.end() || j == k_grid.end()) throw InvalidArgument("critical value not calibrated for (alpha, k)");
  return values[static_cast<std::size_t>(a - alphas.begin())][static_cast<std::size_t>(j - k_grid.begin())];
}

bool CriticalValueTable::rejects(double statistic, double alpha, std::size_t k) const {
  const double c = critical_value(alpha, k);
  return side == Side::right ? statistic > c : statistic < c;
}

CriticalValueTable calibrate_critical_values(BaselineKind kind, const std::vector<double>& alphas,
                                             const std::vector<std::size_t>& k_grid, std::size_t n,
                                             std::size_t m, std::uint64_t seed, Side side, unsigned threads) {
  if (m < 1000) throw InvalidArgument("calibration needs m >= 1000 replications");
  if (alphas.empty() || k_grid.empty()) throw InvalidArgument("calibration needs alphas and a k grid");
  for (double a : alphas) {
    if (!(a > 0.0 && a < 1.0)) throw InvalidArgument("alpha must lie in (0,1)");
  }
  for (std::size_t k : k_grid) {
    if (k < 2 || k >= n) throw InvalidArgument("calibration k must satisfy 2 <= k < n");
  }
  const DistributionSpec null_model = exponential(1.0, 0.0);
  // draws[j][r]: statistic at k_grid[j] in replication r.
  std::vector<std::vector<double>> draws(k_grid.size(), std::vector<double>(m));
  parallel_for(m, threads, [&](std::size_t r) {
    const SortedSample sample(tailsep::sample(null_model, n, SeedBundle{seed, r}));
    for (std::size_t j = 0; j < k_grid.size(); ++j) draws[j][r] = baseline_statistic(kind, sample, k_grid[j]);
  });

  CriticalValueTable table;
  table.kind = kind;
  table.side = side;
  table.alphas = alphas;
  table.k_grid = k_grid;
  table.n = n;
  table.m = m;
  table.seed = seed;
  table.values.assign(alphas.size(), std::vector<double>(k_grid.size()));
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    for (std::size_t j = 0; j < k_grid.size(); ++j) {
      table.values[a][j] = empirical_critical_value(draws[j], alphas[a], side);
    }
  }
  return table;
}

std::string to_csv(const CriticalValueTable& table) {
  std::ostringstream out;
  out << "k";
  for (double a : table.alphas) out << ",alpha_" << format_short(a);
  out << '\n';
  for (std::size_t j = 0; j < table.k_grid.size(); ++j) {
    out << table.k_grid[j];
    for (std::size_t a = 0; a < table.alphas.size(); ++a) out << ',' << format_double(table.values[a][j]);
    out << '\n';
  }
  return out.str();
}

}  // namespace tailsep
