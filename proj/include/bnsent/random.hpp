#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace bnsent {

// Seeded generator used for every stochastic step in the pipeline.
//
// The engine is the 64-bit Mersenne Twister (MT19937-64) whose output
// sequence is fixed by the C++ standard. The distributions in <random> are
// implementation-defined, so bounded integers and unit reals are derived
// here from raw engine output:
//   uniform_index(n): rejection sampling on the top of the 64-bit range,
//                     then x % n.
//   uniform01():      (x >> 11) * 2^-53.
// A given seed therefore replays the same stream on any conforming toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t uniform_index(std::uint64_t n);

  // Uniform real in [0, 1).
  double uniform01();

  // Fisher-Yates, iterating from the back.
  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = uniform_index(i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Derives an independent child seed (splitmix64 finalizer over seed and
// stream id), used e.g. for per-tree seeds in a forest.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace bnsent
