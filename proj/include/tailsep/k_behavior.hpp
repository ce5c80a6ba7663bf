#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace tailsep {

enum class KBehaviorClass { increasing_reject, decreasing_accept, oscillating };

std::string k_behavior_name(KBehaviorClass c);

struct KBehaviorParams {
  double alpha = 0.05;
  double tau_threshold = 0.6;       // |tau| at or above this is a clear trend
  double immediate_fraction = 0.25; // crossing must happen within this leading share of the grid
  std::size_t small_k_max = 250;
};

struct KBehavior {
  KBehaviorClass cls = KBehaviorClass::oscillating;
  double exceed_fraction = 0.0;
  double trend_stat = 0.0;  // Kendall tau of score against k
  std::size_t k_min = 0;
  std::size_t k_max = 0;
  bool reject = false;
};

// Kendall's tau-b between x and y.
double kendall_tau(const std::vector<double>& x, const std::vector<double>& y);

// Mann-Kendall trend z statistic (tie-corrected variance, continuity corrected).
double mann_kendall_z(const std::vector<double>& series);

// Scores must be oriented so that values above u speak against the null.
KBehavior classify_k_behavior(const std::vector<std::size_t>& k_grid, const std::vector<double>& scores, double u,
                              const KBehaviorParams& params = {});

}  // namespace tailsep
