#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>

#include "tailsep/error.hpp"

namespace tailsep::roots {

struct SolveOptions {
  // f is only evaluated on (lower_limit, +inf).
  double lower_limit = -std::numeric_limits<double>::infinity();
  // Absolute tolerance on |f(x) - target|.
  double value_tolerance = 1e-13;
  int max_iterations = 400;
  int max_expansions = 2000;
};

namespace detail {

[[noreturn]] inline void report_failure(const char* what, double lo, double hi, int iterations) {
  std::ostringstream msg;
  msg.precision(17);
  msg << what << ": no convergence after " << iterations << " iterations, bracket [" << lo
      << ", " << hi << "]";
  throw NonConvergence(msg.str());
}

}  // namespace detail

// Solves f(x) = target for a continuous, strictly increasing f.
//
// A bracket is grown geometrically from `guess` (toward lower_limit on the
// left), then shrunk by bisection. When `slope` is non-null its Newton step is
// taken whenever it lands strictly inside the current bracket.
template <typename F, typename DF>
double solve_increasing(F&& f, DF&& slope, double target, double guess, const SolveOptions& opt) {
  double lo = guess;
  double hi = guess;
  double f_guess = f(guess);
  if (!std::isfinite(guess) || std::isnan(f_guess)) {
    throw InvalidArgument("solve_increasing: starting point outside the domain");
  }
  double step = std::max(1.0, std::abs(guess));
  int expansions = 0;
  if (f_guess < target) {
    double f_hi = f_guess;
    while (f_hi < target) {
      lo = hi;
      hi = guess + step;
      step *= 2.0;
      f_hi = f(hi);
      if (++expansions > opt.max_expansions || !std::isfinite(hi)) {
        detail::report_failure("solve_increasing (upper bracket)", lo, hi, expansions);
      }
    }
  } else {
    double f_lo = f_guess;
    double gap = std::isfinite(opt.lower_limit) ? guess - opt.lower_limit : step;
    while (f_lo > target) {
      hi = lo;
      if (std::isfinite(opt.lower_limit)) {
        gap *= 0.5;
        lo = opt.lower_limit + gap;
      } else {
        lo = guess - step;
        step *= 2.0;
      }
      f_lo = f(lo);
      if (++expansions > opt.max_expansions || !std::isfinite(lo) || lo == hi) {
        if (f_lo == target) return lo;
        detail::report_failure("solve_increasing (lower bracket)", lo, hi, expansions);
      }
    }
  }

  double x = 0.5 * (lo + hi);
  for (int it = 0; it < opt.max_iterations; ++it) {
    const double fx = f(x) - target;
    if (std::abs(fx) <= opt.value_tolerance) return x;
    if (fx < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) return x;  // bracket collapsed to adjacent doubles
    double next = mid;
    if constexpr (!std::is_same_v<std::decay_t<DF>, std::nullptr_t>) {
      // Every fourth step bisects so a creeping Newton sequence still shrinks the bracket.
      const double d = (it % 4 == 3) ? 0.0 : slope(x);
      if (d > 0.0 && std::isfinite(d)) {
        const double newton = x - fx / d;
        if (newton > lo && newton < hi) next = newton;
      }
    }
    x = next;
  }
  detail::report_failure("solve_increasing", lo, hi, opt.max_iterations);
}

template <typename F>
double solve_increasing(F&& f, double target, double guess, const SolveOptions& opt) {
  return solve_increasing(std::forward<F>(f), nullptr, target, guess, opt);
}

}  // namespace tailsep::roots
