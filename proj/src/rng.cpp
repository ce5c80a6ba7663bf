#include "tailsep/rng.hpp"

#include <array>

namespace tailsep {

namespace {

std::mt19937_64 make_engine(SeedBundle bundle) {
  const std::array<std::uint32_t, 4> words = {
      static_cast<std::uint32_t>(bundle.seed),
      static_cast<std::uint32_t>(bundle.seed >> 32),
      static_cast<std::uint32_t>(bundle.stream),
      static_cast<std::uint32_t>(bundle.stream >> 32)};
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

}  // namespace

UniformStream::UniformStream(SeedBundle bundle) : engine_(make_engine(bundle)) {}

double UniformStream::next() {
  // Midpoint of one of 2^53 equal cells: never 0, never 1.
  constexpr double kScale = 1.0 / 9007199254740992.0;
  return (static_cast<double>(engine_() >> 11) + 0.5) * kScale;
}

}  // namespace tailsep
