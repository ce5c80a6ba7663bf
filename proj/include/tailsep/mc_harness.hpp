#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "tailsep/baseline.hpp"
#include "tailsep/distributions.hpp"
#include "tailsep/separators.hpp"
#include "tailsep/tail_tests.hpp"

namespace tailsep {

enum class TestKind { scale_free, location_scale_free, hasofer_wang, ratio };

std::string test_name(TestKind kind);
TestKind parse_test(const std::string& text);

// Where replications draw their samples from: a named family or a separator
// itself (for null calibration runs).
using SampleSource = std::variant<DistributionSpec, SeparatorCdf>;

std::string describe(const SampleSource& source);
std::vector<double> draw(const SampleSource& source, std::size_t n, SeedBundle seed);

struct ExperimentSpec {
  SampleSource source = exponential(1.0);
  TestKind test = TestKind::location_scale_free;
  std::optional<SeparatorCdf> separator;  // required for the two separator tests
  std::size_t n = 5000;
  std::size_t m = 1000;
  double alpha = 0.05;
  std::vector<std::size_t> k_grid;
  Side side = Side::right;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0: hardware concurrency
  // Baseline tests only: exponential-null replications for critical values,
  // drawn with seed `seed + 1`.
  std::size_t calibration_m = 2000;
};

void validate(const ExperimentSpec& spec);

struct RejectionCurve {
  std::vector<std::size_t> k_grid;
  std::vector<double> rates;
  std::vector<double> stderrs;
  std::vector<std::size_t> rejected;
  std::vector<std::size_t> errors;  // replications where the statistic could not be evaluated
  ExperimentSpec spec;
};

// Statistic values per k (outer) and replication (inner); NaN marks a
// replication whose statistic raised an error. Replication r uses stream r.
std::vector<std::vector<double>> simulate_statistics(const SampleSource& source, TestKind test,
                                                     const std::optional<SeparatorCdf>& separator,
                                                     std::size_t n, std::size_t m,
                                                     const std::vector<std::size_t>& k_grid,
                                                     std::uint64_t seed, unsigned threads = 0);

RejectionCurve run_rejection_curve(const ExperimentSpec& spec);

// "10:10:1000" (start:step:end) or "100,200".
std::vector<std::size_t> parse_k_grid(const std::string& text);

std::string curve_to_csv(const RejectionCurve& curve);
nlohmann::json curve_to_json(const RejectionCurve& curve);
nlohmann::json spec_to_json(const ExperimentSpec& spec);

}  // namespace tailsep
