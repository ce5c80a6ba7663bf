#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace tailsep {

enum class FitModel { exponential, weibull2, gpd };

std::string fit_model_name(FitModel model);

// exponential: rate.  weibull2: 1 - F = exp(-rate x^shape).
// gpd: 1 - F = (1 + shape x / scale)^(-1/shape), shape = 0 read as exponential.
struct FitResult {
  FitModel model = FitModel::exponential;
  double shape = 1.0;
  double rate = 1.0;
  double scale = 1.0;
  double log_likelihood = 0.0;
  std::size_t n = 0;
  int iterations = 0;
};

inline constexpr double kGpdShapeLower = -0.5;
inline constexpr double kGpdShapeUpper = 5.0;

// All fitters need strictly positive data.
FitResult fit_exponential(const std::vector<double>& data);
FitResult fit_weibull2(const std::vector<double>& data, std::optional<double> fixed_shape = std::nullopt);
FitResult fit_gpd(const std::vector<double>& data);

double gpd_log_likelihood(const std::vector<double>& data, double shape, double scale);
double fitted_quantile(const FitResult& fit, double p);

struct QQRow {
  double exp_quantile;
  double empirical;
  double gpd;
  double weibull;
};

// Plotting positions i/(n+1); one row per observation, ascending.
std::vector<QQRow> qq_table(const std::vector<double>& data, const FitResult& gpd_fit, const FitResult& weibull_fit);

}  // namespace tailsep
