#pragma once

// Standard normal helpers shared by the distributions and the test rules.

namespace tailsep::special {

inline constexpr double kLn2 = 0.69314718055994530942;

double normal_cdf(double x);
// Upper tail 1 - Phi(x), accurate for large x.
double normal_sf(double x);
// log(1 - Phi(x)), finite for every finite x.
double normal_log_sf(double x);
double normal_pdf(double x);

// Phi^{-1}(p). p = 0 gives -inf and p = 1 gives +inf.
double normal_quantile(double p);
// Phi^{-1}(1 - q), accurate when q is tiny.
double normal_upper_quantile(double q);

}  // namespace tailsep::special
