#include "tailsep/mc_harness.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "tailsep/error.hpp"
#include "tailsep/format.hpp"
#include "tailsep/parallel.hpp"

namespace tailsep {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool uses_separator(TestKind test) {
  return test == TestKind::scale_free || test == TestKind::location_scale_free;
}

double evaluate(TestKind test, const SortedSample& sample, std::size_t k, const SeparatorCdf* f0) {
  switch (test) {
    case TestKind::scale_free: return compute_tilde_R(sample, k, *f0);
    case TestKind::location_scale_free: return compute_hat_R(sample, k, *f0);
    case TestKind::hasofer_wang: return hasofer_wang(sample, k);
    case TestKind::ratio: return ratio_statistic(sample, k);
  }
  return kNaN;
}

BaselineKind as_baseline(TestKind test) {
  return test == TestKind::hasofer_wang ? BaselineKind::hasofer_wang : BaselineKind::ratio;
}

std::size_t parse_count(const std::string& text) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    throw InputError("not a count: '" + text + "'");
  }
  if (pos != text.size() || text.front() == '-') throw InputError("not a count: '" + text + "'");
  return static_cast<std::size_t>(v);
}

}  // namespace

std::string test_name(TestKind kind) {
  switch (kind) {
    case TestKind::scale_free: return "scale-free";
    case TestKind::location_scale_free: return "location-scale-free";
    case TestKind::hasofer_wang: return "hasofer-wang";
    case TestKind::ratio: return "ratio";
  }
  return "?";
}

TestKind parse_test(const std::string& text) {
  if (text == "scale-free") return TestKind::scale_free;
  if (text == "location-scale-free") return TestKind::location_scale_free;
  if (text == "hasofer-wang") return TestKind::hasofer_wang;
  if (text == "ratio") return TestKind::ratio;
  throw InputError("unknown test '" + text + "'");
}

std::string describe(const SampleSource& source) {
  if (const auto* d = std::get_if<DistributionSpec>(&source)) return to_string(*d);
  return "separator:" + std::get<SeparatorCdf>(source).describe();
}

std::vector<double> draw(const SampleSource& source, std::size_t n, SeedBundle seed) {
  if (const auto* d = std::get_if<DistributionSpec>(&source)) return sample(*d, n, seed);
  return std::get<SeparatorCdf>(source).sample(n, seed);
}

void validate(const ExperimentSpec& spec) {
  if (spec.m < 1) throw InvalidArgument("experiment: m must be at least 1");
  if (spec.n < 3) throw InvalidArgument("experiment: n must be at least 3");
  if (!(spec.alpha > 0.0 && spec.alpha <= 1.0)) throw InvalidArgument("experiment: alpha must lie in (0,1]");
  if (spec.k_grid.empty()) throw InvalidArgument("experiment: empty k grid");
  if (uses_separator(spec.test) && !spec.separator) throw InvalidArgument("experiment: test needs a separator");
  const std::size_t depth = spec.test == TestKind::location_scale_free ? 2 : 1;
  const std::size_t min_k = (spec.test == TestKind::hasofer_wang) ? 2 : 1;
  for (std::size_t k : spec.k_grid) {
    if (k < min_k || depth * k >= spec.n) {
      std::ostringstream msg;
      msg << "experiment: k=" << k << " invalid for n=" << spec.n << " and test " << test_name(spec.test);
      throw InvalidArgument(msg.str());
    }
  }
}

std::vector<std::vector<double>> simulate_statistics(const SampleSource& source, TestKind test,
                                                     const std::optional<SeparatorCdf>& separator,
                                                     std::size_t n, std::size_t m,
                                                     const std::vector<std::size_t>& k_grid,
                                                     std::uint64_t seed, unsigned threads) {
  if (uses_separator(test) && !separator) throw InvalidArgument("simulate: test needs a separator");
  const SeparatorCdf* f0 = separator ? &*separator : nullptr;
  std::vector<std::vector<double>> values(k_grid.size(), std::vector<double>(m, kNaN));
  parallel_for(m, threads, [&](std::size_t r) {
    const SortedSample sample(draw(source, n, SeedBundle{seed, r}));
    for (std::size_t j = 0; j < k_grid.size(); ++j) {
      try {
        values[j][r] = evaluate(test, sample, k_grid[j], f0);
      } catch (const InvalidArgument&) {
        // Ties and support violations have probability zero for continuous
        // laws; they are counted by the caller.
      } catch (const SupportError&) {
      }
    }
  });
  return values;
}

RejectionCurve run_rejection_curve(const ExperimentSpec& spec) {
  validate(spec);
  const auto values =
      simulate_statistics(spec.source, spec.test, spec.separator, spec.n, spec.m, spec.k_grid, spec.seed, spec.threads);

  std::optional<CriticalValueTable> table;
  const bool baseline = !uses_separator(spec.test);
  if (baseline && spec.alpha < 1.0) {
    table = calibrate_critical_values(as_baseline(spec.test), {spec.alpha}, spec.k_grid, spec.n,
                                      spec.calibration_m, spec.seed + 1, spec.side, spec.threads);
  }
  const double sigma = spec.test == TestKind::location_scale_free ? std::sqrt(sigma2(spec.separator->gamma())) : 1.0;

  RejectionCurve curve;
  curve.spec = spec;
  curve.k_grid = spec.k_grid;
  for (std::size_t j = 0; j < spec.k_grid.size(); ++j) {
    const std::size_t k = spec.k_grid[j];
    std::size_t rejected = 0;
    std::size_t errors = 0;
    for (double s : values[j]) {
      if (std::isnan(s)) {
        ++errors;
        continue;
      }
      bool reject;
      if (!baseline) {
        reject = decide(s, k, spec.n, sigma, spec.alpha, spec.side).reject;
      } else if (table) {
        reject = table->rejects(s, spec.alpha, k);
      } else {
        reject = true;  // alpha = 1
      }
      rejected += reject ? 1 : 0;
    }
    const std::size_t valid = spec.m - errors;
    const double rate = valid > 0 ? static_cast<double>(rejected) / static_cast<double>(valid) : kNaN;
    curve.rates.push_back(rate);
    curve.stderrs.push_back(valid > 0 ? std::sqrt(rate * (1.0 - rate) / static_cast<double>(valid)) : kNaN);
    curve.rejected.push_back(rejected);
    curve.errors.push_back(errors);
  }
  return curve;
}

std::vector<std::size_t> parse_k_grid(const std::string& text) {
  std::vector<std::size_t> grid;
  if (text.find(':') != std::string::npos) {
    std::vector<std::size_t> parts;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ':')) parts.push_back(parse_count(item));
    if (parts.size() != 3 || parts[1] == 0 || parts[0] > parts[2]) {
      throw InputError("k grid must be start:step:end with step > 0");
    }
    for (std::size_t k = parts[0]; k <= parts[2]; k += parts[1]) grid.push_back(k);
  } else {
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) grid.push_back(parse_count(item));
  }
  if (grid.empty()) throw InputError("empty k grid");
  return grid;
}

std::string curve_to_csv(const RejectionCurve& curve) {
  std::ostringstream out;
  out << "k,rate,stderr,n_errors\n";
  for (std::size_t j = 0; j < curve.k_grid.size(); ++j) {
    out << curve.k_grid[j] << ',' << format_double(curve.rates[j]) << ',' << format_double(curve.stderrs[j])
        << ',' << curve.errors[j] << '\n';
  }
  return out.str();
}

nlohmann::json spec_to_json(const ExperimentSpec& spec) {
  nlohmann::json j;
  j["distribution"] = describe(spec.source);
  j["test"] = test_name(spec.test);
  j["separator"] = spec.separator ? nlohmann::json(spec.separator->describe()) : nlohmann::json(nullptr);
  if (spec.separator) j["gamma"] = spec.separator->gamma();
  j["n"] = spec.n;
  j["m"] = spec.m;
  j["alpha"] = spec.alpha;
  j["k_grid"] = spec.k_grid;
  j["side"] = side_name(spec.side);
  j["seed"] = spec.seed;
  if (!uses_separator(spec.test)) j["calibration_m"] = spec.calibration_m;
  return j;
}

nlohmann::json curve_to_json(const RejectionCurve& curve) {
  nlohmann::json j;
  j["spec"] = spec_to_json(curve.spec);
  j["k"] = curve.k_grid;
  j["rate"] = curve.rates;
  j["stderr"] = curve.stderrs;
  j["rejected"] = curve.rejected;
  j["n_errors"] = curve.errors;
  return j;
}

}  // namespace tailsep
