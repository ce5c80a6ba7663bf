#pragma once

#include <cstdint>
#include <random>

namespace tailsep {

// Identifies one reproducible uniform stream. Replication r of a Monte-Carlo
// run uses {seed, r}.
struct SeedBundle {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

// Uniform variates on the open interval (0, 1). Identical bundles give
// bit-identical sequences on every conforming standard library.
class UniformStream {
 public:
  explicit UniformStream(SeedBundle bundle);

  double next();
  std::uint64_t next_bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tailsep
