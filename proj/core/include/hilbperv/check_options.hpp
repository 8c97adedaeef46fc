#pragma once

#include <cstdint>

namespace hilbperv {

/// Default cap on the work of one exhaustive suite, counted in elementary products.
inline constexpr std::uint64_t kDefaultWorkLimit = 100'000'000;

/// Knobs shared by the exhaustive checkers.
struct CheckOptions {
  std::uint64_t limit = kDefaultWorkLimit;  // exhaustive work above this switches to sampling
  unsigned jobs = 1;                        // worker threads
  std::uint64_t seed = 1;                   // sampling seed, echoed in the report
  std::uint64_t samples = 1'000'000;        // inputs drawn in sampled mode
  bool allow_sampling = true;               // false: throw ResourceError instead of sampling
};

}  // namespace hilbperv
