#include "tsopt/rng.hpp"

namespace tsopt {

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  if (bound == 0) return 0;
  // Rejection sampling: draw until the value falls inside the largest
  // multiple of `bound`, so every residue is equally likely.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t v;
  do {
    v = (*this)();
  } while (v >= limit);
  return v % bound;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // Run the stream index through one splitmix round keyed by the seed.
  SplitMix64 mixer(seed ^ (stream * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
  return mixer();
}

}  // namespace tsopt
