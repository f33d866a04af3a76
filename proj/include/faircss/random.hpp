#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace faircss {

/// Reproducible subset sampler ("sampler v1"). std::mt19937_64 is fully
/// specified by the standard, but the std distributions are not, so the
/// bounded integers are drawn here: a 64-bit output x is rejected while
/// x >= 2^64 - (2^64 mod bound) and otherwise mapped to x mod bound.
/// A k-subset of [0, n) is the first k slots of a partial Fisher-Yates
/// shuffle of 0..n-1 (slot i swaps with i + uniform(n - i)), then sorted.
class SubsetSampler {
 public:
  static constexpr int kVersion = 1;

  explicit SubsetSampler(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t uniform(std::uint64_t bound);
  std::vector<std::size_t> subset(std::size_t n, std::size_t k);

 private:
  std::mt19937_64 engine_;
};

}  // namespace faircss
