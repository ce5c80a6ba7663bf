#include "tailsep/conditions.hpp"

#include <cmath>
#include <limits>

#include "tailsep/error.hpp"

namespace tailsep {

namespace {

void require_grid(const std::vector<double>& grid, double above, const char* what) {
  if (grid.empty()) throw InvalidArgument(std::string(what) + " grid is empty");
  for (double v : grid) {
    if (!(std::isfinite(v) && v > above)) throw InvalidArgument(std::string(what) + " grid value out of range");
  }
}

struct Worst {
  double margin = std::numeric_limits<double>::infinity();
  double t = 0.0;
  double c = 0.0;

  void offer(double m, double at_t, double at_c) {
    if (std::isnan(m)) throw NonConvergence("condition check: NaN margin");
    if (m < margin) {
      margin = m;
      t = at_t;
      c = at_c;
    }
  }
};

ConditionReport finish(ConditionKind kind, double parameter, const std::vector<double>& t_grid,
                       const std::vector<double>& c_grid, const Worst& worst) {
  ConditionReport report;
  report.condition = kind;
  report.parameter = parameter;
  report.t_grid = t_grid;
  report.c_grid = c_grid;
  report.worst_margin = worst.margin;
  report.holds = worst.margin >= -kConditionTolerance;
  report.witness_t = worst.t;
  report.witness_c = worst.c;
  return report;
}

}  // namespace

std::string condition_name(ConditionKind kind) {
  switch (kind) {
    case ConditionKind::c_delta: return "C_delta";
    case ConditionKind::c_zero: return "C_zero";
    case ConditionKind::b: return "B";
    case ConditionKind::prop1: return "Prop1";
  }
  return "?";
}

TailFunctions tail_functions(const DistributionSpec& spec) {
  return {[spec](double t) { return quantile(spec, t); },
          [spec](double x) { return log_survival(spec, x); }};
}

TailFunctions tail_functions(const SeparatorCdf& sep) {
  return {[sep](double t) { return sep.quantile(t); }, [sep](double x) { return sep.log_survival(x); }};
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  if (!(lo > 0.0 && hi > lo) || points < 2) throw InvalidArgument("log_grid: need 0 < lo < hi, >= 2 points");
  std::vector<double> grid(points);
  const double a = std::log(lo);
  const double step = (std::log(hi) - a) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = std::exp(a + step * static_cast<double>(i));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

std::vector<double> default_t_grid() { return log_grid(1e6, 1e14, 40); }

std::vector<double> default_c_grid() {
  // 41 points on [1, 1e3] with c = 1 dropped.
  auto grid = log_grid(1.0, 1e3, 41);
  grid.erase(grid.begin());
  return grid;
}

ConditionReport check_C_delta(const QuantileFn& u_h, const QuantileFn& u_g, double delta,
                              const std::vector<double>& t_grid, const std::vector<double>& c_grid) {
  if (!(delta >= 0.0 && std::isfinite(delta))) throw InvalidArgument("check_C_delta: delta must be >= 0");
  require_grid(t_grid, 1.0, "t");
  require_grid(c_grid, 1.0, "c");
  Worst worst;
  for (double t : t_grid) {
    const double rhs = u_h(t) / u_g(t);
    for (double c : c_grid) {
      const double lhs = u_h(std::pow(c, 1.0 + delta) * t) / u_g(c * t);
      worst.offer(rhs - lhs, t, c);
    }
  }
  return finish(delta == 0.0 ? ConditionKind::c_zero : ConditionKind::c_delta, delta, t_grid, c_grid, worst);
}

ConditionReport check_B_condition(const LogSurvivalFn& h, const LogSurvivalFn& g, double epsilon,
                                  const std::vector<double>& x_grid) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument("check_B_condition: epsilon must lie in (0,1)");
  if (x_grid.size() < 2) throw InvalidArgument("check_B_condition: need at least two grid points");
  auto log_ratio = [&](double x) {
    const double lh = h(x);
    const double lg = g(x);
    if (!(lh < 0.0) || !(lg < 0.0) || !std::isfinite(lh) || !std::isfinite(lg)) {
      throw SupportError("check_B_condition: grid point outside a support");
    }
    return (1.0 - epsilon) * lh - lg;
  };
  Worst worst;
  double prev = log_ratio(x_grid.front());
  for (std::size_t i = 1; i < x_grid.size(); ++i) {
    if (!(x_grid[i] > x_grid[i - 1])) throw InvalidArgument("check_B_condition: grid must increase");
    const double cur = log_ratio(x_grid[i]);
    worst.offer(prev - cur, x_grid[i], std::numeric_limits<double>::quiet_NaN());
    prev = cur;
  }
  return finish(ConditionKind::b, epsilon, x_grid, {}, worst);
}

ConditionReport check_prop1(const TailFunctions& h, const TailFunctions& g, double delta,
                            const std::vector<double>& t_grid, const std::vector<double>& c_grid) {
  if (!(delta >= 0.0 && std::isfinite(delta))) throw InvalidArgument("check_prop1: delta must be >= 0");
  require_grid(t_grid, 1.0, "t");
  require_grid(c_grid, 1.0, "c");
  const double keep = 1.0 / (1.0 + delta);  // 1 - epsilon
  Worst worst;
  for (double t : t_grid) {
    const double uh = h.quantile(t);
    const double ug = g.quantile(t);
    const double base_h = h.log_survival(uh);
    const double base_g = g.log_survival(ug);
    for (double c : c_grid) {
      const double lhs = keep * (h.log_survival(c * uh) - base_h);
      const double rhs = g.log_survival(c * ug) - base_g;
      worst.offer(rhs - lhs, t, c);
    }
  }
  return finish(ConditionKind::prop1, delta, t_grid, c_grid, worst);
}

}  // namespace tailsep
