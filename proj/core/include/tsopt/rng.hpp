#pragma once

#include <cstdint>

namespace tsopt {

/// Deterministic 64-bit PRNG (splitmix64).  Used everywhere instead of
/// std::mt19937 + std distributions because the standard distributions
/// are implementation-defined: the same seed must yield the same stream
/// of variates on every platform and standard library.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 bits of precision.
  double canonical() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound) without modulo bias.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

/// Mixes a base seed with a stream index so that independent streams
/// (annealing reads, experiment runs, bootstrap subsets) never share
/// state even for adjacent seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace tsopt
